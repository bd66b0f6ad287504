#pragma once

// Chocolate numbers A(m,n): the number of ordered ways to break an m x n bar
// into unit squares, one piece and one grid line per break.
//
//   A(1,n) = (n-1)!
//   A(m,n) = sum_{i=1}^{m-1} C(mn-2, in-1) A(i,n) A(m-i,n)
//          + sum_{i=1}^{n-1} C(mn-2, im-1) A(i,m) A(n-i,m)
//
// The first break splits the bar in two; the remaining mn-2 breaks are an
// interleaving of the two parts' in-1 and (m-i)n-1 breaks.
//
// B_n = A(2,n) also has a one-dimensional recursion,
//
//   B_n = (2n-2)! + sum_{m=1}^{n-1} C(2n-2, 2m-1) B_m B_{n-m},
//
// which is evaluated independently of the A(m,n) memo so the two routes can
// cross-check each other.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chocolate/arith.hpp"

namespace chocolate {

// Memo of A(m,n) keyed by (min, max). Not internally synchronized: give each
// worker its own table and merge afterwards if needed.
class ChocolateTable {
 public:
  using Key = std::pair<unsigned, unsigned>;

  static Key normalize(unsigned m, unsigned n) { return m <= n ? Key{m, n} : Key{n, m}; }

  const BigInt* find(unsigned m, unsigned n) const {
    auto it = memo_.find(normalize(m, n));
    return it == memo_.end() ? nullptr : &it->second;
  }

  void insert(unsigned m, unsigned n, BigInt value) {
    if (m == 0 || n == 0) throw std::invalid_argument("ChocolateTable: dimensions must be positive");
    memo_.insert_or_assign(normalize(m, n), std::move(value));
  }

  const std::map<Key, BigInt>& entries() const { return memo_; }
  std::size_t size() const { return memo_.size(); }
  bool empty() const { return memo_.empty(); }

  // Number of A(m,n) values this table produced by recursion (loaded
  // entries excluded).
  std::size_t recursion_count() const { return recursions_; }

 private:
  friend BigInt chocolate_number(unsigned m, unsigned n, ChocolateTable& table);
  friend BigInt chocolate2(unsigned n, ChocolateTable& table);

  std::map<Key, BigInt> memo_;
  std::vector<BigInt> b_memo_;  // B_1, B_2, ... from the 2 x n recursion
  std::size_t recursions_ = 0;
};

inline BigInt chocolate_number(unsigned m, unsigned n, ChocolateTable& table) {
  if (m == 0 || n == 0) throw std::invalid_argument("chocolate_number: dimensions must be positive");
  const auto key = ChocolateTable::normalize(m, n);
  if (auto it = table.memo_.find(key); it != table.memo_.end()) return it->second;

  std::tie(m, n) = key;
  BigInt value;
  if (m == 1) {
    value = arith::factorial(n - 1);
  } else {
    const std::uint64_t moves = std::uint64_t{m} * n - 2;
    for (unsigned i = 1; i < m; ++i) {
      value += arith::binomial(moves, std::int64_t{i} * n - 1) * chocolate_number(i, n, table) *
               chocolate_number(m - i, n, table);
    }
    for (unsigned i = 1; i < n; ++i) {
      value += arith::binomial(moves, std::int64_t{i} * m - 1) * chocolate_number(i, m, table) *
               chocolate_number(n - i, m, table);
    }
  }
  ++table.recursions_;
  table.memo_.emplace(key, value);
  return value;
}

inline BigInt chocolate2(unsigned n, ChocolateTable& table) {
  if (n == 0) throw std::invalid_argument("chocolate2: n must be positive");
  auto& b = table.b_memo_;
  while (b.size() < n) {
    const unsigned k = static_cast<unsigned>(b.size()) + 1;  // computing B_k
    const std::uint64_t top = 2 * std::uint64_t{k} - 2;
    BigInt value = arith::factorial(top);
    for (unsigned j = 1; j < k; ++j) {
      value += arith::binomial(top, 2 * std::int64_t{j} - 1) * b[j - 1] * b[k - j - 1];
    }
    b.push_back(std::move(value));
  }
  return b[n - 1];
}

// ---------------------------------------------------------------------------
// Sequences.

enum class SequenceKind { triangle_rows, distinct_sorted, two_by_n, square };

struct SequenceSpec {
  SequenceKind kind = SequenceKind::two_by_n;
  // Row/index count for triangle_rows, two_by_n, square; largest admitted
  // value for distinct_sorted.
  BigInt bound = 1;

  static SequenceSpec rows(SequenceKind kind, unsigned count) { return {kind, BigInt(count)}; }
  static SequenceSpec up_to(const BigInt& limit) { return {SequenceKind::distinct_sorted, limit}; }
};

// One emitted term. (m,n) locate the value in the A table; for
// distinct_sorted they are the first (row-major, m <= n) occurrence.
struct SequenceTerm {
  unsigned m = 0;
  unsigned n = 0;
  BigInt value;
};

namespace detail {

inline unsigned index_bound(const BigInt& bound) {
  if (bound < 1 || bound > 100000) {
    throw std::invalid_argument("generate: index bound must be in [1, 100000]");
  }
  return static_cast<unsigned>(bound);
}

}  // namespace detail

inline std::vector<SequenceTerm> generate(const SequenceSpec& spec, ChocolateTable& table) {
  std::vector<SequenceTerm> out;
  switch (spec.kind) {
    case SequenceKind::triangle_rows: {
      const unsigned rows = detail::index_bound(spec.bound);
      for (unsigned r = 1; r <= rows; ++r) {
        for (unsigned n = 1; n <= r; ++n) {
          const unsigned m = r + 1 - n;
          out.push_back({m, n, chocolate_number(m, n, table)});
        }
      }
      break;
    }
    case SequenceKind::two_by_n: {
      const unsigned count = detail::index_bound(spec.bound);
      for (unsigned n = 1; n <= count; ++n) out.push_back({2, n, chocolate2(n, table)});
      break;
    }
    case SequenceKind::square: {
      const unsigned count = detail::index_bound(spec.bound);
      for (unsigned n = 1; n <= count; ++n) out.push_back({n, n, chocolate_number(n, n, table)});
      break;
    }
    case SequenceKind::distinct_sorted: {
      if (spec.bound < 1) throw std::invalid_argument("generate: value bound must be positive");
      // Walk rows m = 1, 2, ..., collecting n >= m (the rest follows by
      // symmetry) and stopping at the first row whose diagonal exceeds the
      // bound. Completeness needs each row nondecreasing in n; that is
      // checked over every visited row from n = 1, not assumed.
      std::map<BigInt, std::pair<unsigned, unsigned>> found;
      for (unsigned m = 1;; ++m) {
        if (chocolate_number(m, m, table) > spec.bound) break;
        BigInt previous;
        for (unsigned n = 1;; ++n) {
          BigInt value = chocolate_number(m, n, table);
          if (n > 1 && value < previous) {
            std::ostringstream msg;
            msg << "generate: A(" << m << "," << n << ") < A(" << m << "," << n - 1
                << "); row not monotone, cannot certify completeness below " << spec.bound;
            throw std::runtime_error(msg.str());
          }
          if (n >= m) {
            if (value > spec.bound) break;
            found.emplace(value, std::pair{m, n});
          }
          previous = std::move(value);
        }
      }
      for (auto& [value, where] : found) out.push_back({where.first, where.second, value});
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Disk cache: a version header followed by "m n value" lines in decimal.

inline constexpr const char* kCacheHeader = "# chocolate-table v1";

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void save_cache(const ChocolateTable& table, const std::filesystem::path& path) {
  const auto tmp = std::filesystem::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CacheError("cannot write cache file " + tmp.string());
    out << kCacheHeader << '\n';
    for (const auto& [key, value] : table.entries()) {
      out << key.first << ' ' << key.second << ' ' << value << '\n';
    }
    if (!out.flush()) throw CacheError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CacheError("cannot replace cache file " + path.string() + ": " + ec.message());
}

inline ChocolateTable load_cache(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CacheError("cannot read cache file " + path.string());

  auto fail = [&path](std::size_t line_no, const std::string& what) {
    throw CacheError(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };

  std::string line;
  if (!std::getline(in, line)) fail(1, "missing header");
  if (line != kCacheHeader) {
    if (line.rfind("# chocolate-table v", 0) == 0) fail(1, "unsupported cache version '" + line + "'");
    fail(1, "missing header");
  }

  ChocolateTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    long long m = 0, n = 0;
    std::string digits, extra;
    if (!(fields >> m >> n >> digits) || (fields >> extra)) fail(line_no, "expected 'm n value'");
    if (m < 1 || n < 1 || m > 1'000'000 || n > 1'000'000) fail(line_no, "dimensions out of range");
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      fail(line_no, "value is not a decimal integer");
    }
    BigInt value(digits);
    if (const BigInt* old = table.find(static_cast<unsigned>(m), static_cast<unsigned>(n));
        old != nullptr && *old != value) {
      fail(line_no, "conflicting duplicate entry");
    }
    table.insert(static_cast<unsigned>(m), static_cast<unsigned>(n), std::move(value));
  }
  return table;
}

}  // namespace chocolate
