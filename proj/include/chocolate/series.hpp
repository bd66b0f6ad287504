#pragma once

// Truncated power series with exact rational coefficients.
//
// A series of order N knows its coefficients of X^0..X^N and nothing above.
// Every operation produces exactly the coefficients its operands determine:
// products keep order N, derivatives drop to N-1, division by X drops to N-1
// and multiplication by X rises to N+1.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chocolate/arith.hpp"

namespace chocolate::series {

class RationalSeries {
 public:
  // The zero series of the given order.
  explicit RationalSeries(std::size_t order) : coeffs_(order + 1) {}

  // Coefficients c[0..N]; order N = size - 1.
  explicit RationalSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("RationalSeries: need at least one coefficient");
  }

  static RationalSeries constant(const Rational& c, std::size_t order) {
    RationalSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }

  // sum_{k=0}^{N} X^k, i.e. 1/(1-X).
  static RationalSeries geometric(std::size_t order) {
    return RationalSeries(std::vector<Rational>(order + 1, Rational(1)));
  }

  std::size_t order() const { return coeffs_.size() - 1; }

  const Rational& operator[](std::size_t k) const { return coeffs_.at(k); }
  Rational& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  std::optional<std::size_t> first_nonzero() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] != 0) return k;
    }
    return std::nullopt;
  }

  bool is_zero() const { return !first_nonzero().has_value(); }

  RationalSeries truncated(std::size_t order) const {
    if (order > this->order()) throw std::invalid_argument("truncated: cannot raise the order");
    return RationalSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  friend bool operator==(const RationalSeries&, const RationalSeries&) = default;

 private:
  std::vector<Rational> coeffs_;
};

namespace detail {

inline void require_same_order(const RationalSeries& a, const RationalSeries& b, const char* op) {
  if (a.order() != b.order()) {
    throw std::invalid_argument(std::string(op) + ": operands have orders " +
                                std::to_string(a.order()) + " and " + std::to_string(b.order()));
  }
}

}  // namespace detail

inline RationalSeries add(const RationalSeries& a, const RationalSeries& b) {
  detail::require_same_order(a, b, "add");
  RationalSeries out(a.order());
  for (std::size_t k = 0; k <= a.order(); ++k) out[k] = a[k] + b[k];
  return out;
}

inline RationalSeries sub(const RationalSeries& a, const RationalSeries& b) {
  detail::require_same_order(a, b, "sub");
  RationalSeries out(a.order());
  for (std::size_t k = 0; k <= a.order(); ++k) out[k] = a[k] - b[k];
  return out;
}

inline RationalSeries scalar_mul(const Rational& c, const RationalSeries& a) {
  RationalSeries out(a.order());
  for (std::size_t k = 0; k <= a.order(); ++k) out[k] = c * a[k];
  return out;
}

inline RationalSeries mul(const RationalSeries& a, const RationalSeries& b) {
  detail::require_same_order(a, b, "mul");
  const std::size_t n = a.order();
  RationalSeries out(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline RationalSeries differentiate(const RationalSeries& a) {
  if (a.order() == 0) throw std::invalid_argument("differentiate: order-0 series has no known derivative");
  RationalSeries out(a.order() - 1);
  for (std::size_t k = 0; k < a.order(); ++k) out[k] = a[k + 1] * (k + 1);
  return out;
}

// a / b; needs b[0] != 0.
inline RationalSeries divide(const RationalSeries& a, const RationalSeries& b) {
  detail::require_same_order(a, b, "divide");
  if (b[0] == 0) throw std::domain_error("divide: divisor has zero constant term");
  const std::size_t n = a.order();
  RationalSeries q(n);
  for (std::size_t k = 0; k <= n; ++k) {
    Rational r = a[k];
    for (std::size_t j = 1; j <= k; ++j) r -= b[j] * q[k - j];
    q[k] = r / b[0];
  }
  return q;
}

// a / X. The constant term must vanish.
inline RationalSeries divide_by_x(const RationalSeries& a) {
  if (a[0] != 0) throw std::domain_error("divide_by_x: constant term is not zero");
  if (a.order() == 0) throw std::invalid_argument("divide_by_x: order-0 series");
  RationalSeries out(a.order() - 1);
  for (std::size_t k = 0; k < a.order(); ++k) out[k] = a[k + 1];
  return out;
}

// X * a, one order higher.
inline RationalSeries multiply_by_x(const RationalSeries& a) {
  RationalSeries out(a.order() + 1);
  for (std::size_t k = 0; k <= a.order(); ++k) out[k + 1] = a[k];
  return out;
}

// "num/den" for every coefficient, zero as "0/1".
inline std::string coefficient_string(const Rational& c) {
  return boost::multiprecision::numerator(c).str() + "/" +
         boost::multiprecision::denominator(c).str();
}

}  // namespace chocolate::series
