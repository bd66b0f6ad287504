#pragma once

// Brute-force count of complete break sequences. A game state is the
// multiset of pieces on the table; a move picks one physical piece and one of
// its (w-1)+(h-1) interior grid lines. Equal-sized pieces are distinct
// physical choices, so each distinct size contributes multiplicity times the
// count of its successor state.
//
// This deliberately shares nothing with the recursion in table.hpp beyond
// the BigInt type.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "chocolate/arith.hpp"

namespace chocolate::oracle {

inline constexpr unsigned kDefaultAreaLimit = 12;

struct PieceCount {
  unsigned w = 1;  // w <= h
  unsigned h = 1;
  unsigned mult = 1;

  friend auto operator<=>(const PieceCount&, const PieceCount&) = default;
};

// Canonical multiset of pieces: sorted, orientation-normalized, merged.
class PieceMultiset {
 public:
  PieceMultiset() = default;

  static PieceMultiset bar(unsigned m, unsigned n) {
    PieceMultiset s;
    s.add(m, n, 1);
    return s;
  }

  void add(unsigned w, unsigned h, unsigned count) {
    if (w > h) std::swap(w, h);
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), PieceCount{w, h, 0},
                               [](const PieceCount& a, const PieceCount& b) {
                                 return std::tie(a.w, a.h) < std::tie(b.w, b.h);
                               });
    if (it != pieces_.end() && it->w == w && it->h == h) {
      it->mult += count;
    } else {
      pieces_.insert(it, PieceCount{w, h, count});
    }
  }

  // Removes one piece of the given (normalized) size.
  void remove_one(unsigned w, unsigned h) {
    if (w > h) std::swap(w, h);
    auto it = std::find_if(pieces_.begin(), pieces_.end(),
                           [&](const PieceCount& p) { return p.w == w && p.h == h; });
    if (it == pieces_.end()) throw std::logic_error("PieceMultiset: no such piece");
    if (--it->mult == 0) pieces_.erase(it);
  }

  // Successor after cutting one w x h piece into a x b and c x d.
  PieceMultiset split(const PieceCount& piece, unsigned a, unsigned b, unsigned c,
                      unsigned d) const {
    PieceMultiset next = *this;
    next.remove_one(piece.w, piece.h);
    next.add(a, b, 1);
    next.add(c, d, 1);
    return next;
  }

  const std::vector<PieceCount>& pieces() const { return pieces_; }

  std::uint64_t area() const {
    std::uint64_t a = 0;
    for (const auto& p : pieces_) a += std::uint64_t{p.w} * p.h * p.mult;
    return a;
  }

  std::uint64_t piece_count() const {
    std::uint64_t c = 0;
    for (const auto& p : pieces_) c += p.mult;
    return c;
  }

  bool terminal() const {
    return std::all_of(pieces_.begin(), pieces_.end(),
                       [](const PieceCount& p) { return p.w == 1 && p.h == 1; });
  }

  friend auto operator<=>(const PieceMultiset&, const PieceMultiset&) = default;

 private:
  std::vector<PieceCount> pieces_;
};

// Every break turns one piece into two.
inline std::uint64_t count_breaks(unsigned m, unsigned n) {
  if (m == 0 || n == 0) throw std::invalid_argument("count_breaks: dimensions must be positive");
  return std::uint64_t{m} * n - 1;
}

namespace detail {

class SequenceCounter {
 public:
  explicit SequenceCounter(std::uint64_t area) : area_(area) {}

  BigInt ways(const PieceMultiset& state, std::uint64_t breaks_so_far) {
    assert(state.area() == area_);
    assert(breaks_so_far + 1 == state.piece_count());
    (void)breaks_so_far;
    if (state.terminal()) return 1;
    if (auto it = memo_.find(state); it != memo_.end()) return it->second;

    BigInt total = 0;
    for (const PieceCount& p : state.pieces()) {
      BigInt from_piece = 0;
      for (unsigned j = 1; j < p.w; ++j) {
        from_piece += ways(state.split(p, j, p.h, p.w - j, p.h), breaks_so_far + 1);
      }
      for (unsigned j = 1; j < p.h; ++j) {
        from_piece += ways(state.split(p, p.w, j, p.w, p.h - j), breaks_so_far + 1);
      }
      total += from_piece * p.mult;
    }
    memo_.emplace(state, total);
    return total;
  }

  std::size_t states() const { return memo_.size(); }

 private:
  std::uint64_t area_;
  std::map<PieceMultiset, BigInt> memo_;
};

}  // namespace detail

inline BigInt count_sequences(unsigned m, unsigned n, unsigned area_limit = kDefaultAreaLimit) {
  if (m == 0 || n == 0) throw std::invalid_argument("count_sequences: dimensions must be positive");
  const std::uint64_t area = std::uint64_t{m} * n;
  if (area > area_limit) {
    throw std::invalid_argument("count_sequences: area " + std::to_string(area) +
                                " exceeds limit " + std::to_string(area_limit));
  }
  detail::SequenceCounter counter(area);
  return counter.ways(PieceMultiset::bar(m, n), 0);
}

// Plays one uniformly random legal break at a time from the m x n bar until
// only unit squares remain; returns the number of breaks made.
template <class Rng>
std::uint64_t random_playout(unsigned m, unsigned n, Rng& rng) {
  struct Piece {
    unsigned w, h;
  };
  std::vector<Piece> pieces{{m, n}};
  std::uint64_t breaks = 0;
  for (;;) {
    std::vector<std::size_t> breakable;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (pieces[i].w * pieces[i].h > 1) breakable.push_back(i);
    }
    if (breakable.empty()) return breaks;
    const std::size_t pick =
        breakable[std::uniform_int_distribution<std::size_t>(0, breakable.size() - 1)(rng)];
    const Piece p = pieces[pick];
    const unsigned lines = (p.w - 1) + (p.h - 1);
    const unsigned line = std::uniform_int_distribution<unsigned>(1, lines)(rng);
    if (line < p.w) {
      pieces[pick] = {line, p.h};
      pieces.push_back({p.w - line, p.h});
    } else {
      const unsigned j = line - (p.w - 1);
      pieces[pick] = {p.w, j};
      pieces.push_back({p.w, p.h - j});
    }
    ++breaks;
  }
}

}  // namespace chocolate::oracle
