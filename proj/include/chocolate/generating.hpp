#pragma once

// Generating-function identities for B_n, checked coefficient by coefficient
// in exact arithmetic.
//
//   f(X) = sum_{n>=1} B_n / (2n-1)! X^n
//   u(X) = sum_{n>=0} P_n / (4^n (2n)!) X^n,   P_n = prod_{i=1}^{n} ((4i-5)^2 - 5)
//
// Identities:
//   f' = 1/(2(1-X)) + f/(2X) + f^2/(2X)          (Riccati form)
//   4X(1-X) u'' + (2-2X) u' + u = 0               (linear form)
//   2X u' + f u = 0                                (f = -2X u'/u)
//
// u is the rational rearrangement of 2F1((-1-sqrt5)/4, (-1+sqrt5)/4; 1/2; X),
// so no irrational number is ever represented.

#include <span>
#include <stdexcept>
#include <vector>

#include "chocolate/arith.hpp"
#include "chocolate/series.hpp"
#include "chocolate/table.hpp"

namespace chocolate::series {

// b[n-1] = B_n for n = 1..N.
inline RationalSeries f_series_from(std::span<const BigInt> b) {
  if (b.empty()) throw std::invalid_argument("f_series: need at least B_1");
  RationalSeries f(b.size());
  for (std::size_t n = 1; n <= b.size(); ++n) {
    f[n] = Rational(b[n - 1], arith::factorial(2 * n - 1));
  }
  return f;
}

inline std::vector<BigInt> chocolate2_values(std::size_t order, ChocolateTable& table) {
  std::vector<BigInt> b;
  for (unsigned n = 1; n <= order; ++n) b.push_back(chocolate2(n, table));
  return b;
}

inline RationalSeries f_series(std::size_t order, ChocolateTable& table) {
  if (order < 1) throw std::invalid_argument("f_series: order must be positive");
  return f_series_from(chocolate2_values(order, table));
}

// f' - [1/(2(1-X)) + f/(2X) + f^2/(2X)] through order N-1.
inline RationalSeries riccati_residual(const RationalSeries& f) {
  if (f.order() < 1) throw std::invalid_argument("riccati_residual: order must be positive");
  const std::size_t top = f.order() - 1;
  const Rational half(1, 2);
  const RationalSeries rhs =
      add(add(scalar_mul(half, RationalSeries::geometric(top)), scalar_mul(half, divide_by_x(f))),
          scalar_mul(half, divide_by_x(mul(f, f))));
  return sub(differentiate(f), rhs);
}

inline RationalSeries riccati_residual(std::size_t order, ChocolateTable& table) {
  if (order < 3) throw std::invalid_argument("riccati_residual: order must be at least 3");
  return riccati_residual(f_series(order, table));
}

// P_0 = 1, P_1, ..., P_N exactly.
inline std::vector<BigInt> p_numerators(std::size_t order) {
  std::vector<BigInt> p{BigInt(1)};
  for (std::size_t i = 1; i <= order; ++i) {
    const BigInt base = 4 * BigInt(i) - 5;
    p.push_back(p.back() * (base * base - 5));
  }
  return p;
}

// p[n] = P_n for n = 0..N.
inline RationalSeries u_series_from(std::span<const BigInt> p) {
  if (p.empty()) throw std::invalid_argument("u_series: need at least P_0");
  RationalSeries u(p.size() - 1);
  BigInt four_pow = 1;
  for (std::size_t n = 0; n < p.size(); ++n) {
    u[n] = Rational(p[n], four_pow * arith::factorial(2 * n));
    four_pow *= 4;
  }
  return u;
}

inline RationalSeries u_series(std::size_t order) {
  if (order < 1) throw std::invalid_argument("u_series: order must be positive");
  return u_series_from(p_numerators(order));
}

// 2X u' + f u through order N; f and u must share order N.
inline RationalSeries log_derivative_residual(const RationalSeries& f, const RationalSeries& u) {
  detail::require_same_order(f, u, "log_derivative_residual");
  return add(scalar_mul(Rational(2), multiply_by_x(differentiate(u))), mul(f, u));
}

inline RationalSeries log_derivative_residual(std::size_t order, ChocolateTable& table) {
  if (order < 3) throw std::invalid_argument("verify_log_derivative: order must be at least 3");
  return log_derivative_residual(f_series(order, table), u_series(order));
}

inline bool verify_log_derivative(std::size_t order, ChocolateTable& table) {
  return log_derivative_residual(order, table).is_zero();
}

// 4X(1-X) u'' + (2-2X) u' + u through order N-1.
inline RationalSeries ode_residual(const RationalSeries& u) {
  if (u.order() < 2) throw std::invalid_argument("ode_residual: order must be at least 2");
  const std::size_t top = u.order() - 1;
  const RationalSeries d1 = differentiate(u);              // order N-1
  const RationalSeries d2 = differentiate(d1);             // order N-2
  const RationalSeries x_d2 = multiply_by_x(d2);           // order N-1
  const RationalSeries xx_d2 = multiply_by_x(x_d2).truncated(top);
  const RationalSeries x_d1 = multiply_by_x(d1).truncated(top);
  RationalSeries out = scalar_mul(Rational(4), sub(x_d2, xx_d2));
  out = add(out, scalar_mul(Rational(2), sub(d1, x_d1)));
  return add(out, u.truncated(top));
}

inline bool verify_linear_ode(std::size_t order) {
  if (order < 4) throw std::invalid_argument("verify_linear_ode: order must be at least 4");
  return ode_residual(u_series(order)).is_zero();
}

}  // namespace chocolate::series
