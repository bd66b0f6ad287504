#pragma once

// Evidence-based detection of eventual periodicity in a finite residue
// sequence. A report is only "resolved" when the repeating tail is long
// enough to be convincing; otherwise it says so instead of guessing.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace chocolate {

struct PeriodOptions {
  // The periodic tail must hold at least this many full periods...
  std::size_t min_repeats = 3;
  // ...and at least 1/tail_fraction_den of the observed terms.
  std::size_t tail_fraction_den = 2;
  // Shortest sequence worth examining.
  std::size_t min_length = 8;
};

struct PeriodReport {
  std::size_t preperiod = 0;  // number of leading terms outside the cycle
  std::size_t period = 0;
  bool eventually_zero = false;
  std::size_t evidence_length = 0;
  bool resolved = false;
};

namespace detail {

// Smallest t with s[i] == s[i + period] for all t <= i < size - period.
inline std::size_t cycle_start(std::span<const std::uint64_t> s, std::size_t period) {
  std::size_t t = s.size() - period;
  while (t > 0 && s[t - 1] == s[t - 1 + period]) --t;
  return t;
}

inline bool convincing(std::size_t length, std::size_t start, std::size_t period,
                       const PeriodOptions& opt) {
  const std::size_t tail = length - start;
  return tail >= opt.min_repeats * period && tail * opt.tail_fraction_den >= length;
}

inline std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> small, large;
  for (std::size_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

// Candidate periods (e.g. divisors of p(p-1)) are tried first; when one
// fits, its divisors are checked in increasing order for a shorter period.
// Otherwise every length up to size / min_repeats is tried in order.
inline PeriodReport detect_eventual_period(std::span<const std::uint64_t> seq,
                                           std::span<const std::size_t> candidate_periods = {},
                                           const PeriodOptions& opt = {}) {
  PeriodReport report;
  const std::size_t n = seq.size();
  report.evidence_length = n;
  if (n < opt.min_length || n < opt.min_repeats) return report;
  const std::size_t max_period = n / opt.min_repeats;

  auto accept = [&](std::size_t period) {
    const std::size_t start = detail::cycle_start(seq, period);
    if (!detail::convincing(n, start, period, opt)) return false;
    report.preperiod = start;
    report.period = period;
    report.resolved = true;
    report.eventually_zero = period == 1 && seq[start] == 0;
    return true;
  };

  std::vector<std::size_t> candidates(candidate_periods.begin(), candidate_periods.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (std::size_t c : candidates) {
    if (c == 0 || c > max_period) continue;
    const std::size_t start = detail::cycle_start(seq, c);
    if (!detail::convincing(n, start, c, opt)) continue;
    for (std::size_t d : detail::divisors(c)) {
      if (accept(d)) return report;
    }
  }

  for (std::size_t period = 1; period <= max_period; ++period) {
    if (accept(period)) return report;
  }
  return report;
}

}  // namespace chocolate
