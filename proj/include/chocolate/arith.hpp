#pragma once

// Exact integer helpers: factorials, binomials, p-adic valuations,
// trial-division factorization, Miller-Rabin, Legendre symbols and
// factorial divisibility via Legendre's formula.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace chocolate {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

}  // namespace chocolate

namespace chocolate::arith {

inline BigInt factorial(std::uint64_t n) {
  BigInt result = 1;
  for (std::uint64_t i = 2; i <= n; ++i) result *= i;
  return result;
}

// C(n, k), zero outside 0 <= k <= n. Multiplicative form; every partial
// quotient is itself a binomial so the division is exact.
inline BigInt binomial(std::uint64_t n, std::int64_t k) {
  if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
  std::uint64_t kk = static_cast<std::uint64_t>(k);
  if (kk > n - kk) kk = n - kk;
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= kk; ++i) {
    result *= n - kk + i;
    result /= i;
  }
  return result;
}

inline unsigned nu_p(const BigInt& value, std::uint64_t p) {
  if (value <= 0) throw std::invalid_argument("nu_p: value must be positive");
  if (p < 2) throw std::invalid_argument("nu_p: p must be a prime");
  if (p == 2) return static_cast<unsigned>(boost::multiprecision::lsb(value));
  unsigned e = 0;
  BigInt v = value, q, r;
  const BigInt bp = p;
  for (;;) {
    boost::multiprecision::divide_qr(v, bp, q, r);
    if (r != 0) return e;
    v.swap(q);
    ++e;
  }
}

// ---------------------------------------------------------------------------
// Primality.

namespace detail {

inline std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod64(result, base, m);
    base = mul_mod64(base, base, m);
    exp >>= 1;
  }
  return result;
}

// First thirteen primes: a strong-probable-prime test to all of these bases
// is deterministic below 3317044064679887385961981.
inline constexpr std::array<unsigned, 13> kWitnesses{2,  3,  5,  7,  11, 13, 17,
                                                     19, 23, 29, 31, 37, 41};

}  // namespace detail

inline const BigInt& deterministic_mr_limit() {
  static const BigInt limit("3317044064679887385961981");
  return limit;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned p : detail::kWitnesses) {
    if (n % p == 0) return n == p;
  }
  const int s = std::countr_zero(n - 1);
  const std::uint64_t d = (n - 1) >> s;
  // Bases 2..37 suffice for every 64-bit n.
  for (unsigned a : detail::kWitnesses) {
    if (a == 41) break;
    std::uint64_t x = detail::pow_mod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = detail::mul_mod64(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

// Strong-probable-prime test to the thirteen fixed bases. Exact below
// deterministic_mr_limit(); a probable-prime verdict above it.
inline bool miller_rabin(const BigInt& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    return is_prime(static_cast<std::uint64_t>(n));
  }
  for (unsigned p : detail::kWitnesses) {
    if (n % p == 0) return false;
  }
  const BigInt n_minus_1 = n - 1;
  const unsigned s = static_cast<unsigned>(boost::multiprecision::lsb(n_minus_1));
  const BigInt d = n_minus_1 >> s;
  for (unsigned a : detail::kWitnesses) {
    BigInt x = boost::multiprecision::powm(BigInt(a), d, n);
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s && composite; ++r) {
      x = x * x % n;
      if (x == n_minus_1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Factorization.

enum class CofactorStatus { unit, probable_prime, composite_unresolved };

inline const char* to_string(CofactorStatus status) {
  switch (status) {
    case CofactorStatus::unit: return "unit";
    case CofactorStatus::probable_prime: return "probable_prime";
    case CofactorStatus::composite_unresolved: return "composite_unresolved";
  }
  return "?";
}

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::vector<PrimePower> factors;  // strictly increasing primes
  BigInt cofactor = 1;
  CofactorStatus cofactor_status = CofactorStatus::unit;

  bool complete() const { return cofactor == 1; }

  BigInt value() const {
    BigInt v = cofactor;
    for (const auto& f : factors) v *= boost::multiprecision::pow(f.prime, f.exponent);
    return v;
  }

  // "2^4*107"; exponents of one are omitted, a remaining cofactor is
  // appended as a plain factor.
  std::string str() const {
    std::string out;
    auto append = [&out](const std::string& s) {
      if (!out.empty()) out += '*';
      out += s;
    };
    for (const auto& f : factors) {
      std::string term = f.prime.str();
      if (f.exponent != 1) term += "^" + std::to_string(f.exponent);
      append(term);
    }
    if (cofactor != 1) append(cofactor.str());
    return out.empty() ? "1" : out;
  }
};

inline constexpr std::uint64_t kDefaultTrialBound = 1'000'000;

inline Factorization factor(const BigInt& value, std::uint64_t trial_bound = kDefaultTrialBound) {
  if (value < 1) throw std::invalid_argument("factor: value must be positive");
  if (trial_bound < 2) throw std::invalid_argument("factor: trial bound must be at least 2");

  Factorization result;
  BigInt rest = value;
  bool rest_known_prime = false;

  auto strip = [&](std::uint64_t d) {
    unsigned e = 0;
    BigInt q, r;
    const BigInt bd = d;
    for (;;) {
      boost::multiprecision::divide_qr(rest, bd, q, r);
      if (r != 0) break;
      rest.swap(q);
      ++e;
    }
    if (e > 0) result.factors.push_back({BigInt(d), e});
  };

  strip(2);
  for (std::uint64_t d = 3; d <= trial_bound && rest > 1; d += 2) {
    if (BigInt(d) * d > rest) {
      rest_known_prime = true;
      break;
    }
    if (rest <= std::numeric_limits<std::uint64_t>::max()) {
      // Same loop on machine words once the remainder fits.
      auto small = static_cast<std::uint64_t>(rest);
      for (; d <= trial_bound && small > 1; d += 2) {
        if (static_cast<unsigned __int128>(d) * d > small) {
          rest_known_prime = true;
          break;
        }
        unsigned e = 0;
        while (small % d == 0) {
          small /= d;
          ++e;
        }
        if (e > 0) result.factors.push_back({BigInt(d), e});
      }
      rest = small;
      break;
    }
    strip(d);
  }

  if (rest == 1) return result;
  if (rest_known_prime ||
      (rest < deterministic_mr_limit() && miller_rabin(rest))) {
    result.factors.push_back({rest, 1});
    return result;
  }
  result.cofactor = rest;
  result.cofactor_status = miller_rabin(rest) ? CofactorStatus::probable_prime
                                              : CofactorStatus::composite_unresolved;
  return result;
}

// ---------------------------------------------------------------------------

// (a | p) by Euler's criterion.
inline int legendre(std::int64_t a, std::uint64_t p) {
  if (p == 2) throw std::invalid_argument("legendre: p must be an odd prime");
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("legendre: p must be an odd prime");
  std::int64_t r = a % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  if (r == 0) return 0;
  const std::uint64_t e = detail::pow_mod64(static_cast<std::uint64_t>(r), (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

// nu_p(N!) = sum_{i >= 1} floor(N / p^i).
inline std::uint64_t factorial_valuation(std::uint64_t n, std::uint64_t p) {
  std::uint64_t total = 0;
  for (unsigned __int128 q = p; q <= n; q *= p) total += static_cast<std::uint64_t>(n / q);
  return total;
}

// Whether k | N!, decided prime by prime; N! itself is never formed.
inline bool divides_factorial(std::uint64_t k, std::uint64_t n) {
  if (k == 0) throw std::invalid_argument("divides_factorial: k must be positive");
  const Factorization f = factor(BigInt(k));
  if (!f.complete()) {
    throw std::runtime_error("divides_factorial: could not factor " + std::to_string(k));
  }
  return std::all_of(f.factors.begin(), f.factors.end(), [n](const PrimePower& pp) {
    return factorial_valuation(n, static_cast<std::uint64_t>(pp.prime)) >= pp.exponent;
  });
}

}  // namespace chocolate::arith
