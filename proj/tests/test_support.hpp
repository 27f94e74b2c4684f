#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sqpack/block.hpp"
#include "sqpack/geometry.hpp"
#include "sqpack/params.hpp"
#include "sqpack/verify.hpp"

namespace sqtest {

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  double uniform(double a, double b) {
    return a + (b - a) * (static_cast<double>(g() >> 11) * 0x1.0p-53);
  }
  std::int64_t uniform_int(std::int64_t a, std::int64_t b) {  // inclusive
    return a + static_cast<std::int64_t>(g() % static_cast<std::uint64_t>(b - a + 1));
  }
  bool coin() { return (g() & 1) != 0; }
};

/// Random rectangle satisfying the eccentricity bounds for (t, M, n0), at a
/// small random anchor, possibly with the width on the y axis.
inline sqpack::Rect random_block_rect(double t, std::int64_t M, std::int64_t n0,
                                      Rng& rng) {
  const double s = sqpack::inv_pow(n0, t);
  const double Md = static_cast<double>(M);
  const double u = rng.uniform(Md + 0.02, 3.0 * Md - 0.05);
  const double v = rng.uniform(u, 3.0 * Md - 0.02);
  const double ax = rng.uniform(0.0, 2.0 * Md) * s;
  const double ay = rng.uniform(0.0, 2.0 * Md) * s;
  if (rng.coin()) return sqpack::Rect{ax, ay, ax + u * s, ay + v * s};
  return sqpack::Rect{ax, ay, ax + v * s, ay + u * s};  // width on the y axis
}

inline std::vector<sqpack::Rect> block_footprints(const sqpack::BlockResult& res) {
  std::vector<sqpack::Rect> out;
  out.reserve(res.squares.size() + res.gaps.size());
  for (const sqpack::PlacedSquare& q : res.squares) out.push_back(q.footprint());
  for (const sqpack::TaggedRect& g : res.gaps) out.push_back(g.rect);
  return out;
}

inline double sum_areas(const sqpack::BlockResult& res) {
  sqpack::KahanAccumulator acc;
  for (const sqpack::PlacedSquare& q : res.squares) acc.add(q.side * q.side);
  for (const sqpack::TaggedRect& g : res.gaps) acc.add(sqpack::area(g.rect));
  acc.add(res.discarded_area);
  return acc.value();
}

/// Bit-exact adjacency identities on the construction axes:
/// u_{i+1,j} == u_{i,j} + side_{i,j} and v_{i,j+1} == v_{i,j} + side_{i,j}.
inline bool adjacency_exact(const sqpack::BlockResult& res) {
  const std::int64_t M1 = res.M1, M2 = res.M2;
  auto sq = [&](std::int64_t i, std::int64_t j) -> const sqpack::PlacedSquare& {
    return res.squares[static_cast<std::size_t>(j * M1 + i)];
  };
  auto u = [&](std::int64_t i, std::int64_t j) {
    return res.swapped ? sq(i, j).y_lo : sq(i, j).x_lo;
  };
  auto v = [&](std::int64_t i, std::int64_t j) {
    return res.swapped ? sq(i, j).x_lo : sq(i, j).y_lo;
  };
  for (std::int64_t j = 0; j < M2; ++j) {
    for (std::int64_t i = 0; i < M1; ++i) {
      if (i + 1 < M1 && u(i + 1, j) != u(i, j) + sq(i, j).side) return false;
      if (j + 1 < M2 && v(i, j + 1) != v(i, j) + sq(i, j).side) return false;
    }
  }
  return true;
}

/// Index of a square with a neighbor flush against its right edge; -1 if none.
inline std::ptrdiff_t find_row_adjacent_pair(const std::vector<sqpack::PlacedSquare>& sq,
                                             std::ptrdiff_t* neighbor) {
  for (std::size_t a = 0; a < sq.size(); ++a) {
    for (std::size_t b = 0; b < sq.size(); ++b) {
      if (a == b) continue;
      if (sq[b].x_lo == sq[a].x_lo + sq[a].side && sq[b].y_lo < sq[a].y_lo + sq[a].side &&
          sq[b].y_lo + sq[b].side > sq[a].y_lo) {
        if (neighbor) *neighbor = static_cast<std::ptrdiff_t>(b);
        return static_cast<std::ptrdiff_t>(a);
      }
    }
  }
  return -1;
}

}  // namespace sqtest
