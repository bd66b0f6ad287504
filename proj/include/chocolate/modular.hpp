#pragma once

// Residue arithmetic for B_n and P_n at indices far beyond what exact
// integers allow, plus the divisibility and mod-3 statements about them.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chocolate/arith.hpp"

namespace chocolate::modular {

using Residue = std::uint64_t;

inline Residue mul_mod(Residue a, Residue b, std::uint64_t m) {
  if (m <= 0xFFFFFFFFu) return a * b % m;
  return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % m);
}

inline Residue add_mod(Residue a, Residue b, std::uint64_t m) {
  const Residue s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

// Row r of Pascal's triangle reduced mod m, advanced one row at a time.
class ModContext {
 public:
  explicit ModContext(std::uint64_t modulus) : modulus_(modulus), row_{1 % modulus} {
    if (modulus < 2) throw std::invalid_argument("ModContext: modulus must be at least 2");
  }

  std::uint64_t modulus() const { return modulus_; }
  std::size_t row_index() const { return row_.size() - 1; }
  std::span<const Residue> row() const { return row_; }

  // C(r, k) mod m for the current row r; zero outside [0, r].
  Residue at(std::int64_t k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= row_.size()) return 0;
    return row_[static_cast<std::size_t>(k)];
  }

  void advance() {
    row_.push_back(0);
    for (std::size_t k = row_.size() - 1; k > 0; --k) row_[k] = add_mod(row_[k], row_[k - 1], modulus_);
  }

  void advance_to(std::size_t r) {
    if (r < row_index()) throw std::logic_error("ModContext: rows only move forward");
    if (row_.capacity() < r + 1) row_.reserve(std::max(r + 1, 2 * row_.capacity()));
    while (row_index() < r) advance();
  }

 private:
  std::uint64_t modulus_;
  std::vector<Residue> row_;
};

// B_1..B_{n_max} mod m from the 2 x n recursion, entirely in residues:
// (2n-2)! as a running product, binomials from a single Pascal row.
inline std::vector<Residue> chocolate2_mod(std::size_t n_max, std::uint64_t m) {
  if (n_max < 1) throw std::invalid_argument("chocolate2_mod: n_max must be positive");
  if (m < 2) throw std::invalid_argument("chocolate2_mod: modulus must be at least 2");
  std::vector<Residue> b(n_max + 1, 0);  // b[0] unused
  ModContext pascal(m);
  pascal.advance_to(0);
  Residue fact = 1 % m;  // (2n-2)! mod m
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n >= 2 && fact != 0) fact = mul_mod(fact, mul_mod((2 * n - 3) % m, (2 * n - 2) % m, m), m);
    pascal.advance_to(2 * n - 2);
    const auto row = pascal.row();
    // C(2n-2, 2j-1) B_j B_{n-j} is symmetric under j <-> n-j.
    Residue half = 0;
    for (std::size_t j = 1; 2 * j < n; ++j) {
      half = add_mod(half, mul_mod(row[2 * j - 1], mul_mod(b[j], b[n - j], m), m), m);
    }
    Residue sum = add_mod(half, half, m);
    if (n % 2 == 0) {
      const std::size_t j = n / 2;
      sum = add_mod(sum, mul_mod(row[2 * j - 1], mul_mod(b[j], b[j], m), m), m);
    }
    b[n] = add_mod(sum, fact, m);
  }
  b.erase(b.begin());
  return b;
}

// The factor (4i-5)^2 - 5 of P_n, reduced mod m.
inline Residue p_factor_mod(std::uint64_t i, std::uint64_t m) {
  const auto mm = static_cast<__int128>(m);
  __int128 x = (4 * static_cast<__int128>(i) - 5) % mm;
  if (x < 0) x += mm;
  __int128 v = (x * x - 5) % mm;
  if (v < 0) v += mm;
  return static_cast<Residue>(v);
}

// P_1..P_{n_max} mod m, where P_n = prod_{i=1}^{n} ((4i-5)^2 - 5).
inline std::vector<Residue> p_sequence_mod(std::size_t n_max, std::uint64_t m) {
  if (n_max < 1) throw std::invalid_argument("p_sequence_mod: n_max must be positive");
  if (m < 2) throw std::invalid_argument("p_sequence_mod: modulus must be at least 2");
  std::vector<Residue> out;
  out.reserve(n_max);
  Residue acc = 1 % m;
  for (std::size_t i = 1; i <= n_max; ++i) {
    acc = mul_mod(acc, p_factor_mod(i, m), m);
    out.push_back(acc);
  }
  return out;
}

// C(n, k) mod p by Lucas' theorem; p prime.
inline Residue binomial_mod_prime(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (k > n) return 0;
  Residue result = 1;
  while (n > 0 || k > 0) {
    const std::uint64_t ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // C(ni, ki) mod p with ni < p: exact small product with inverse by Fermat.
    Residue num = 1, den = 1;
    for (std::uint64_t j = 0; j < ki; ++j) {
      num = mul_mod(num, ni - j, p);
      den = mul_mod(den, j + 1, p);
    }
    result = mul_mod(result, mul_mod(num, arith::detail::pow_mod64(den, p - 2, p), p), p);
    n /= p;
    k /= p;
  }
  return result;
}

// P_n mod p reaches zero exactly when some (4i-5)^2 = 5 mod p, i.e. for
// p = 2, 5 and primes with 5 a quadratic residue (p = +-1 mod 5).
inline bool classify_zero_tail_prime(std::uint64_t p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("classify_zero_tail_prime: p must be prime");
  if (p == 2 || p == 5) return true;
  return arith::legendre(5, p) == 1;
}

// Divisibility propagation: if k | B_i for floor((n+1)/2) <= i <= n-1 and
// k | (2n-2)!, every B_j with j >= n is divisible by k. residues[i-1] holds
// B_i mod k.
inline bool propagation_check(std::uint64_t k, std::size_t n, std::span<const Residue> residues) {
  if (k < 1) throw std::invalid_argument("propagation_check: k must be positive");
  if (n < 1) throw std::invalid_argument("propagation_check: n must be positive");
  const std::size_t lo = (n + 1) / 2;
  if (n >= 2 && residues.size() < n - 1) {
    throw std::invalid_argument("propagation_check: residues cover B_1..B_" +
                                std::to_string(residues.size()) + ", need through B_" +
                                std::to_string(n - 1));
  }
  for (std::size_t i = lo; i + 1 <= n; ++i) {
    if (i >= 1 && residues[i - 1] % k != 0) return false;
  }
  return arith::divides_factorial(k, 2 * std::uint64_t(n) - 2);
}

// The conclusion side: every available B_j (j >= n) is zero mod k.
inline bool propagation_conclusion_observed(std::uint64_t k, std::size_t n,
                                         std::span<const Residue> residues) {
  for (std::size_t j = n; j <= residues.size(); ++j) {
    if (residues[j - 1] % k != 0) return false;
  }
  return true;
}

// Expected B_n mod 3 for n > 1: 1 when n = 2 (mod 3), otherwise 2.
inline Residue mod3_expected(std::size_t n) { return n % 3 == 2 ? 1 : 2; }

// First n in [2, n_max] where B_n mod 3 departs from the pattern.
inline std::optional<std::size_t> mod3_violation(std::size_t n_max) {
  if (n_max < 2) throw std::invalid_argument("mod3_check: n_max must be at least 2");
  const auto b = chocolate2_mod(n_max, 3);
  for (std::size_t n = 2; n <= n_max; ++n) {
    if (b[n - 1] != mod3_expected(n)) return n;
  }
  return std::nullopt;
}

inline bool mod3_check(std::size_t n_max) { return !mod3_violation(n_max).has_value(); }

// (C(n,1) + C(n,7) + ... + C(n,n-1)) mod 3 for n = 2 (mod 6), n > 2.
inline Residue binomial_sum_1_mod_6(std::uint64_t n) {
  if (n <= 2 || n % 6 != 2) throw std::invalid_argument("binomial_sum_1_mod_6: need n = 2 (mod 6), n > 2");
  Residue s = 0;
  for (std::uint64_t k = 1; k + 1 <= n; k += 6) s = (s + binomial_mod_prime(n, k, 3)) % 3;
  return s;
}

// (C(n,5) + C(n,11) + ... + C(n,n-5)) mod 3 for n = 4 (mod 6), n > 4.
inline Residue binomial_sum_5_mod_6(std::uint64_t n) {
  if (n <= 4 || n % 6 != 4) throw std::invalid_argument("binomial_sum_5_mod_6: need n = 4 (mod 6), n > 4");
  Residue s = 0;
  for (std::uint64_t k = 5; k + 5 <= n; k += 6) s = (s + binomial_mod_prime(n, k, 3)) % 3;
  return s;
}

}  // namespace chocolate::modular
