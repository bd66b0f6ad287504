#include "chocolate/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

#include "chocolate/table.hpp"
#include "test_oracles.hpp"

namespace {

using chocolate::BigInt;
using namespace chocolate::oracle;

TEST(CountSequences, Examples) {
  EXPECT_EQ(count_sequences(2, 2), 4);
  EXPECT_EQ(count_sequences(1, 4), 6);
  EXPECT_EQ(count_sequences(2, 3), 56);
  EXPECT_EQ(count_sequences(1, 1), 1);
}

TEST(CountSequences, AreaLimit) {
  EXPECT_THROW(count_sequences(4, 4), std::invalid_argument);
  EXPECT_THROW(count_sequences(0, 4), std::invalid_argument);
  EXPECT_EQ(count_sequences(2, 7, 14), 984237056);
}

TEST(CountSequences, SymmetricAndFactorialRow) {
  for (unsigned m = 1; m <= 12; ++m) {
    for (unsigned n = 1; m * n <= 12; ++n) EXPECT_EQ(count_sequences(m, n), count_sequences(n, m));
  }
  for (unsigned n = 1; n <= 8; ++n) EXPECT_EQ(count_sequences(1, n), chocolate::testing::naive_factorial(n - 1));
}

TEST(CountSequences, AgreesWithRecursion) {
  chocolate::ChocolateTable table;
  for (unsigned m = 1; m <= 12; ++m) {
    for (unsigned n = 1; m * n <= 12; ++n) {
      EXPECT_EQ(count_sequences(m, n), chocolate::chocolate_number(m, n, table)) << m << "x" << n;
    }
  }
}

TEST(CountBreaks, Examples) {
  EXPECT_EQ(count_breaks(2, 2), 3u);
  EXPECT_EQ(count_breaks(1, 1), 0u);
  EXPECT_EQ(count_breaks(3, 4), 11u);
}

TEST(CountBreaks, EveryPlayoutHasFixedLength) {
  std::mt19937_64 rng(11);
  for (unsigned m = 1; m <= 7; ++m) {
    for (unsigned n = 1; n <= 7; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        ASSERT_EQ(random_playout(m, n, rng), count_breaks(m, n)) << m << "x" << n;
      }
    }
  }
}

TEST(PieceMultiset, SplitConservesAreaAndAddsOnePiece) {
  auto s = PieceMultiset::bar(3, 4);
  EXPECT_EQ(s.area(), 12u);
  EXPECT_FALSE(s.terminal());
  std::uint64_t breaks = 0;
  // Always cut the first non-unit piece along its first line.
  while (!s.terminal()) {
    const auto& pieces = s.pieces();
    auto it = std::find_if(pieces.begin(), pieces.end(), [](const PieceCount& p) { return p.h > 1; });
    ASSERT_NE(it, pieces.end());
    const PieceCount p = *it;
    s = p.w > 1 ? s.split(p, 1, p.h, p.w - 1, p.h) : s.split(p, 1, 1, 1, p.h - 1);
    ++breaks;
    ASSERT_EQ(s.area(), 12u);
    ASSERT_EQ(s.piece_count(), breaks + 1);
  }
  EXPECT_EQ(breaks, count_breaks(3, 4));
  ASSERT_EQ(s.pieces().size(), 1u);
  EXPECT_EQ(s.pieces()[0].mult, 12u);
}

TEST(PieceMultiset, CanonicalOrientation) {
  PieceMultiset a, b;
  a.add(2, 3, 1);
  a.add(1, 1, 2);
  b.add(1, 1, 1);
  b.add(3, 2, 1);
  b.add(1, 1, 1);
  EXPECT_EQ(a, b);
}

}  // namespace
