#pragma once

// Empirical scans for the three open statements about B_n modulo m:
//
//   1. B_n mod p is eventually all zero iff p = 2, 5 or p = +-1 (mod 5).
//   2. B_n mod m is eventually periodic for every m.
//   3. For the remaining primes, the period relates to p(p-1).
//
// A scan only ever reports whether finite evidence agrees with a statement.
// It never settles one.

#include <cstdint>
#include <future>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chocolate/arith.hpp"
#include "chocolate/modular.hpp"
#include "chocolate/period.hpp"

namespace chocolate {

enum class ScanStatus { consistent, inconsistent, unresolved };

inline const char* to_string(ScanStatus s) {
  switch (s) {
    case ScanStatus::consistent: return "CONSISTENT";
    case ScanStatus::inconsistent: return "INCONSISTENT";
    case ScanStatus::unresolved: return "UNRESOLVED";
  }
  return "?";
}

struct ScanRecord {
  int conjecture = 0;
  std::string sequence;  // "B" or "P"
  std::uint64_t modulus = 0;
  std::size_t n_max = 0;
  ScanStatus status = ScanStatus::unresolved;
  std::optional<std::size_t> preperiod;
  std::optional<std::size_t> period;
  std::string notes;
};

struct ScanOptions {
  PeriodOptions period;
  bool parallel = true;
};

namespace detail {

inline void fill_period(ScanRecord& rec, const PeriodReport& rep) {
  if (!rep.resolved) return;
  rec.preperiod = rep.preperiod;
  rec.period = rep.period;
}

inline std::vector<std::size_t> pp1_divisors(std::uint64_t p) {
  return divisors(static_cast<std::size_t>(p * (p - 1)));
}

// 1-based index where the final run of zeros starts, if the last term is 0.
inline std::optional<std::size_t> zero_run_start(std::span<const modular::Residue> s) {
  if (s.empty() || s.back() != 0) return std::nullopt;
  std::size_t i = s.size();
  while (i > 0 && s[i - 1] == 0) --i;
  return i + 1;
}

inline void require_prime(std::uint64_t p) {
  if (!arith::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

inline ScanRecord scan_zero_tail(std::uint64_t p, std::size_t n_max, const ScanOptions& opt) {
  require_prime(p);
  ScanRecord rec{1, "B", p, n_max};
  const auto b = modular::chocolate2_mod(n_max, p);
  const bool predicted_zero = modular::classify_zero_tail_prime(p);
  fill_period(rec, detect_eventual_period(b, {}, opt.period));

  // A zero run counts as an eventual zero tail only when the propagation
  // hypothesis (zero window plus p | (2n-2)!) is met inside the data.
  std::optional<std::size_t> certified_from;
  const auto zero_from = zero_run_start(b);
  if (zero_from) {
    std::size_t n = std::max<std::size_t>(2 * *zero_from - 1, 2);
    while (2 * n - 2 < p) ++n;
    if (n <= n_max + 1 && modular::propagation_check(p, n, b)) certified_from = *zero_from;
  }

  std::ostringstream notes;
  notes << "classifier=" << (predicted_zero ? "zero" : "nonzero") << "; ";
  if (certified_from) {
    rec.status = predicted_zero ? ScanStatus::consistent : ScanStatus::inconsistent;
    rec.preperiod = *certified_from - 1;
    rec.period = 1;
    notes << "zero tail from index " << *certified_from
          << ", propagation hypothesis met within n_max";
  } else if (zero_from) {
    rec.status = ScanStatus::unresolved;
    notes << "zeros from index " << *zero_from << " but window too short to propagate";
  } else {
    rec.status = predicted_zero ? ScanStatus::unresolved : ScanStatus::consistent;
    notes << "no zero tail through index " << n_max;
  }
  rec.notes = notes.str();
  return rec;
}

inline ScanRecord scan_periodic(std::uint64_t m, std::size_t n_max, const ScanOptions& opt) {
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  ScanRecord rec{2, "B", m, n_max};
  const auto rep = detect_eventual_period(modular::chocolate2_mod(n_max, m), {}, opt.period);
  fill_period(rec, rep);
  std::ostringstream notes;
  if (rep.resolved) {
    rec.status = ScanStatus::consistent;
    notes << (rep.eventually_zero ? "eventually zero" : "periodic") << "; tail of "
          << n_max - rep.preperiod << " terms";
  } else {
    rec.status = ScanStatus::unresolved;
    notes << "no period with a convincing tail up to " << n_max / opt.period.min_repeats;
  }
  rec.notes = notes.str();
  return rec;
}

inline ScanRecord scan_period_relation(std::uint64_t p, const std::string& sequence,
                                       std::size_t n_max, const ScanOptions& opt) {
  require_prime(p);
  ScanRecord rec{3, sequence, p, n_max};
  const std::uint64_t pp1 = p * (p - 1);
  if (modular::classify_zero_tail_prime(p)) {
    rec.status = ScanStatus::consistent;
    rec.notes = "p outside hypothesis (p = 2, 5 or +-1 mod 5); nothing to compare";
    return rec;
  }
  const auto values = sequence == "P" ? modular::p_sequence_mod(n_max, p)
                                      : modular::chocolate2_mod(n_max, p);
  const auto hints = pp1_divisors(p);
  const auto rep = detect_eventual_period(values, hints, opt.period);
  fill_period(rec, rep);
  std::ostringstream notes;
  if (!rep.resolved) {
    rec.status = ScanStatus::unresolved;
    notes << "no period resolved; p(p-1)=" << pp1;
  } else {
    const bool divides = pp1 % rep.period == 0;
    const bool divisible = rep.period % pp1 == 0;
    // Either reading of the relation counts as agreement; both are reported.
    rec.status = (divides || divisible) ? ScanStatus::consistent : ScanStatus::inconsistent;
    notes << "period=" << rep.period << "; p(p-1)=" << pp1
          << "; period divides p(p-1): " << (divides ? "yes" : "no")
          << "; p(p-1) divides period: " << (divisible ? "yes" : "no");
  }
  rec.notes = notes.str();
  return rec;
}

}  // namespace detail

// One record per modulus for conjectures 1 and 2; for conjecture 3 one B
// record and one P record per prime. Records come back in input order.
inline std::vector<ScanRecord> conjecture_scan(int id, std::span<const std::uint64_t> moduli,
                                               std::size_t n_max, const ScanOptions& opt = {}) {
  if (id < 1 || id > 3) throw std::invalid_argument("conjecture id must be 1, 2 or 3");
  if (n_max < 100) throw std::invalid_argument("conjecture_scan: n_max must be at least 100");

  auto scan_one = [id, n_max, &opt](std::uint64_t m) {
    std::vector<ScanRecord> out;
    switch (id) {
      case 1: out.push_back(detail::scan_zero_tail(m, n_max, opt)); break;
      case 2: out.push_back(detail::scan_periodic(m, n_max, opt)); break;
      default:
        out.push_back(detail::scan_period_relation(m, "B", n_max, opt));
        out.push_back(detail::scan_period_relation(m, "P", n_max, opt));
    }
    return out;
  };

  // Validate up front so worker threads never throw on bad input.
  for (std::uint64_t m : moduli) {
    if (id != 2) detail::require_prime(m);
    else if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  }

  std::vector<std::vector<ScanRecord>> per_modulus;
  if (opt.parallel && moduli.size() > 1) {
    std::vector<std::future<std::vector<ScanRecord>>> jobs;
    for (std::uint64_t m : moduli) jobs.push_back(std::async(std::launch::async, scan_one, m));
    for (auto& j : jobs) per_modulus.push_back(j.get());
  } else {
    for (std::uint64_t m : moduli) per_modulus.push_back(scan_one(m));
  }

  std::vector<ScanRecord> records;
  for (auto& group : per_modulus) {
    for (auto& r : group) records.push_back(std::move(r));
  }
  return records;
}

}  // namespace chocolate
