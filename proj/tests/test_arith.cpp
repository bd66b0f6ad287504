#include "chocolate/arith.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_oracles.hpp"

namespace {

using chocolate::BigInt;
using namespace chocolate::arith;
namespace t = chocolate::testing;

TEST(Factorial, SmallValues) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(4), 24);
  EXPECT_EQ(factorial(6), 720);
  EXPECT_EQ(factorial(25), t::naive_factorial(25));
}

TEST(Binomial, Examples) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(6, -1), 0);
  EXPECT_EQ(binomial(6, 7), 0);
  EXPECT_EQ(binomial(0, 0), 1);
  // Leading term of B_3's expansion: C(4,2) A(1,3) A(3,1) = 6 * 2 * 2.
  EXPECT_EQ(binomial(4, 2) * factorial(2) * factorial(2), 24);
}

TEST(Binomial, MatchesPascalAndSymmetry) {
  const auto rows = t::pascal_rows(60);
  for (std::uint64_t n = 0; n <= 60; ++n) {
    for (std::int64_t k = 0; k <= static_cast<std::int64_t>(n); ++k) {
      ASSERT_EQ(binomial(n, k), rows[n][k]) << n << " choose " << k;
      ASSERT_EQ(binomial(n, k), binomial(n, static_cast<std::int64_t>(n) - k));
      if (n >= 1 && n <= 30) {
        ASSERT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
      }
    }
  }
}

TEST(NuP, Examples) {
  EXPECT_EQ(nu_p(4, 2), 2u);
  EXPECT_EQ(nu_p(1, 7), 0u);
  EXPECT_EQ(nu_p(92800, 2), 7u);
  EXPECT_EQ(nu_p(92800, 5), 2u);
  EXPECT_THROW(nu_p(0, 2), std::invalid_argument);
}

TEST(NuP, ExactPowerProperty) {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 101u}) {
    for (int trial = 0; trial < 300; ++trial) {
      BigInt v = BigInt(rng() % 100000 + 1) * boost::multiprecision::pow(BigInt(p), rng() % 40);
      const unsigned e = nu_p(v, p);
      const BigInt pe = boost::multiprecision::pow(BigInt(p), e);
      ASSERT_EQ(v % pe, 0);
      ASSERT_NE(v % (pe * p), 0);
    }
  }
}

TEST(IsPrime, AgreesWithSieve) {
  const auto primes = t::primes_below(200000);
  std::vector<bool> is(200000, false);
  for (auto p : primes) is[p] = true;
  for (std::uint64_t n = 0; n < 200000; ++n) ASSERT_EQ(is_prime(n), is[n]) << n;
  // Strong pseudoprimes to several small bases.
  EXPECT_FALSE(is_prime(3215031751ull));
  EXPECT_FALSE(is_prime(3825123056546413051ull));
  EXPECT_TRUE(is_prime(18446744073709551557ull));
}

TEST(MillerRabin, BeyondSixtyFourBits) {
  const BigInt m61 = (BigInt(1) << 61) - 1;
  const BigInt m89 = (BigInt(1) << 89) - 1;  // Mersenne prime
  EXPECT_TRUE(miller_rabin(m89));
  EXPECT_FALSE(miller_rabin(m61 * m61));
  EXPECT_FALSE(miller_rabin(m89 * 3));
}

TEST(Factor, TableTwoExamples) {
  const auto f = factor(1712);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0], (PrimePower{2, 4}));
  EXPECT_EQ(f.factors[1], (PrimePower{107, 1}));
  EXPECT_EQ(f.cofactor, 1);
  EXPECT_EQ(f.str(), "2^4*107");

  const auto unit = factor(1);
  EXPECT_TRUE(unit.factors.empty());
  EXPECT_EQ(unit.cofactor, 1);
  EXPECT_EQ(unit.cofactor_status, CofactorStatus::unit);
  EXPECT_EQ(unit.str(), "1");

  EXPECT_EQ(factor(9408).str(), "2^6*3*7^2");
  EXPECT_THROW(factor(0), std::invalid_argument);
}

TEST(Factor, LargePrimeCofactorIsClassified) {
  // 2^3 * (2^61 - 1): the cofactor is far above the trial bound.
  const BigInt m61 = (BigInt(1) << 61) - 1;
  const auto f = factor(8 * m61);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[1].prime, m61);
  EXPECT_TRUE(f.complete());
}

TEST(Factor, UnresolvedCofactorKeepsValue) {
  const BigInt semi = BigInt(10007) * 10009;
  const auto f = factor(semi * 4, 100);
  EXPECT_EQ(f.cofactor, semi);
  EXPECT_EQ(f.cofactor_status, CofactorStatus::composite_unresolved);
  EXPECT_EQ(f.value(), semi * 4);

  const BigInt m89 = (BigInt(1) << 89) - 1;
  const auto g = factor(m89 * m89 * 6, 1000);
  EXPECT_EQ(g.cofactor_status, CofactorStatus::composite_unresolved);
  EXPECT_EQ(g.value(), m89 * m89 * 6);

  const BigInt m107 = (BigInt(1) << 107) - 1;  // above the deterministic range
  const auto h = factor(m107 * 5, 1000);
  EXPECT_EQ(h.cofactor, m107);
  EXPECT_EQ(h.cofactor_status, CofactorStatus::probable_prime);
}

TEST(Factor, RemultiplicationIsIdentity) {
  std::mt19937_64 rng(2024);
  std::vector<BigInt> values{BigInt(999983) * 999983, BigInt(999999999989ull), BigInt(1000000000000ull),
                             BigInt(2) * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29 * 31 * 37};
  for (int i = 0; i < 1500; ++i) values.emplace_back(rng() % 1000000000000ull + 1);
  for (const auto& v : values) {
    const auto f = factor(v);
    ASSERT_EQ(f.value(), v);
    ASSERT_TRUE(f.complete()) << v;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      ASSERT_GE(f.factors[i].exponent, 1u);
      ASSERT_TRUE(miller_rabin(f.factors[i].prime));
      if (i > 0) ASSERT_LT(f.factors[i - 1].prime, f.factors[i].prime);
    }
  }
}

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre(5, 11), 1);
  EXPECT_EQ(legendre(5, 3), -1);
  EXPECT_EQ(legendre(0, 7), 0);
  EXPECT_EQ(legendre(-1, 7), -1);
  EXPECT_THROW(legendre(5, 2), std::invalid_argument);
  EXPECT_THROW(legendre(5, 9), std::invalid_argument);
}

TEST(Legendre, MatchesSquaresBruteForce) {
  for (std::uint64_t p : t::primes_below(100)) {
    if (p == 2) continue;
    std::vector<bool> square(p, false);
    for (std::uint64_t x = 1; x < p; ++x) square[x * x % p] = true;
    for (std::int64_t a = -2 * static_cast<std::int64_t>(p); a < 2 * static_cast<std::int64_t>(p); ++a) {
      const std::uint64_t r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + p) % p);
      const int expected = r == 0 ? 0 : (square[r] ? 1 : -1);
      ASSERT_EQ(legendre(a, p), expected) << a << " mod " << p;
    }
  }
}

TEST(DividesFactorial, Examples) {
  EXPECT_FALSE(divides_factorial(11, 10));
  EXPECT_TRUE(divides_factorial(4, 4));
  EXPECT_EQ(factorial_valuation(24, 2), 22u);
  EXPECT_TRUE(divides_factorial(1u << 13, 24));
  EXPECT_FALSE(divides_factorial(1u << 23, 24));
  EXPECT_TRUE(divides_factorial(1, 0));
  EXPECT_THROW(divides_factorial(0, 5), std::invalid_argument);
}

TEST(DividesFactorial, AgreesWithDirectDivision) {
  for (std::uint64_t n = 0; n <= 200; ++n) {
    const BigInt f = t::naive_factorial(n);
    for (std::uint64_t k = 1; k <= 10000; ++k) {
      ASSERT_EQ(divides_factorial(k, n), f % k == 0) << k << " | " << n << "!";
    }
  }
}

TEST(DividesFactorial, UnfactorableRejected) {
  // Product of two primes above the trial bound.
  EXPECT_THROW(divides_factorial(1000003ull * 1000033ull, 10), std::runtime_error);
}

}  // namespace
