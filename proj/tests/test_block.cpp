#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "sqpack/block.hpp"
#include "sqpack/verify.hpp"
#include "test_support.hpp"

using namespace sqpack;

namespace {

// Cover-multiplicity check over a jittered interior grid: every sample point
// away from edges must lie in exactly one interior, and never in two.
bool mc_tiling_ok(const Rect& outer, const std::vector<Rect>& items, int grid_n,
                  double eta) {
  for (int ky = 0; ky < grid_n; ++ky) {
    const double y = outer.y_lo + (ky + 0.5) / grid_n * outer.extent_y();
    for (int kx = 0; kx < grid_n; ++kx) {
      const double x = outer.x_lo + (kx + 0.5) / grid_n * outer.extent_x();
      int cover = 0;
      bool boundary = false;
      for (const Rect& r : items) {
        const double m = std::min(std::min(x - r.x_lo, r.x_hi - x),
                                  std::min(y - r.y_lo, r.y_hi - y));
        if (m > eta) {
          ++cover;
        } else if (m > -eta) {
          boundary = true;
        }
      }
      if (cover >= 2) return false;
      if (cover == 0 && !boundary) return false;
    }
  }
  return true;
}

std::array<std::size_t, 4> gap_census(const std::vector<TaggedRect>& gaps) {
  std::array<std::size_t, 4> counts{0, 0, 0, 0};
  for (const TaggedRect& g : gaps) {
    switch (g.kind) {
      case RectKind::surround: ++counts[0]; break;
      case RectKind::left: ++counts[1]; break;
      case RectKind::top: ++counts[2]; break;
      case RectKind::corner: ++counts[3]; break;
      default: break;
    }
  }
  return counts;
}

}  // namespace

TEST_CASE("lex_index: grid origin, direct substitution, bijection") {
  CHECK(lex_index(0, 0, 123, 7, 9) == 123);
  CHECK(lex_index(1, 2, 100, 3, 5) == 107);  // n0 + j*M1 + i
  std::set<std::int64_t> seen;
  for (std::int64_t j = 0; j < 4; ++j)
    for (std::int64_t i = 0; i < 3; ++i) seen.insert(lex_index(i, j, 50, 3, 4));
  CHECK(seen.size() == 12);
  CHECK(*seen.begin() == 50);
  CHECK(*seen.rbegin() == 61);
  CHECK_THROWS_AS(lex_index(3, 0, 50, 3, 4), std::out_of_range);
  CHECK_THROWS_AS(lex_index(0, 4, 50, 3, 4), std::out_of_range);
  CHECK_THROWS_AS(lex_index(-1, 0, 50, 3, 4), std::out_of_range);
}

TEST_CASE("choose_M1_M2: floors, exact boundaries, violations") {
  const Params p = Params::make(0.75, 4, 100'000);
  const double s = inv_pow(p.n0, p.t);

  SUBCASE("exact lower boundary gives M1 = M2 = M") {
    const Rect r{0, 0, 4.0 * s, 4.0 * s};
    auto mm = choose_M1_M2(r, p.n0, p, nullptr);
    REQUIRE(mm.has_value());
    CHECK(mm->M1 == 4);
    CHECK(mm->M2 == 4);
  }
  SUBCASE("direct floor evaluation: 5.7s x 9.3s -> (5, 9)") {
    const Rect r{0, 0, 5.7 * s, 9.3 * s};
    auto mm = choose_M1_M2(r, p.n0, p, nullptr);
    REQUIRE(mm.has_value());
    CHECK(mm->M1 == 5);
    CHECK(mm->M2 == 9);
  }
  SUBCASE("exact 3M boundary clamps to M1 = 3M, accepted") {
    const Rect r{0, 0, 12.0 * s, 12.0 * s};
    auto mm = choose_M1_M2(r, p.n0, p, nullptr);
    REQUIRE(mm.has_value());
    CHECK(mm->M1 == 12);
    CHECK(mm->M2 == 12);
  }
  SUBCASE("width below M n0^-t is a structured violation") {
    Violation why;
    CHECK_FALSE(choose_M1_M2(Rect{0, 0, 3.2 * s, 5.0 * s}, p.n0, p, &why).has_value());
    CHECK(why.check.rfind("eccentricity.lower", 0) == 0);
    CHECK(why.n == p.n0);
  }
  SUBCASE("height above 3M n0^-t is a structured violation") {
    Violation why;
    CHECK_FALSE(choose_M1_M2(Rect{0, 0, 5.0 * s, 12.6 * s}, p.n0, p, &why).has_value());
    CHECK(why.check.rfind("eccentricity.upper", 0) == 0);
  }
}

TEST_CASE("place_squares: the worked two-square row at t = 1/2, n0 = 4") {
  // sides 4^-0.5 = 0.5 exactly and 5^-0.5 = 0.4472135954999579...
  const BlockSpec spec{Rect{0, 0, 1.0, 0.5}, 4, 0.5, 2, 1};
  const auto sq = place_squares(spec);
  REQUIRE(sq.size() == 2);
  CHECK(sq[0].n == 4);
  CHECK(sq[0].side == 0.5);
  CHECK(sq[1].n == 5);
  CHECK(sq[1].side == doctest::Approx(0.4472135954999579).epsilon(1e-15));
  CHECK(sq[0].x_lo == doctest::Approx(0.05278640450004206).epsilon(1e-14));
  CHECK(sq[1].x_lo == doctest::Approx(0.55278640450004206).epsilon(1e-14));
  CHECK(sq[0].y_lo == 0.0);
  CHECK(sq[1].y_lo == 0.0);
  // x_{M1-1,j} = w(R) - n^-t: single-term suffix
  CHECK(sq[1].x_lo + sq[1].side == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("place_squares: bottom row flush, right edge flush within ulps") {
  const std::int64_t n0 = 250'000;
  const double t = 0.7;
  const double s = inv_pow(n0, t);
  const BlockSpec spec{Rect{0, 0, 7.25 * s, 8.4 * s}, n0, t, 7, 8};
  const auto sq = place_squares(spec);
  REQUIRE(sq.size() == 56);
  for (std::int64_t i = 0; i < 7; ++i)
    CHECK(sq[static_cast<std::size_t>(i)].y_lo == 0.0);
  const double w = spec.rect.extent_x();
  for (std::int64_t j = 0; j < 8; ++j) {
    const PlacedSquare& last = sq[static_cast<std::size_t>(j * 7 + 6)];
    CHECK(std::fabs(last.x_lo + last.side - w) <= 16.0 * kEps * w);
    // single-term suffix identity at the last column
    CHECK(std::fabs(last.x_lo - (w - last.side)) <= 16.0 * kEps * w);
  }
}

TEST_CASE("place_squares: adjacency identities hold bit-for-bit") {
  sqtest::Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const std::int64_t n0 = rng.uniform_int(100, 5'000'000);
    const double t = rng.uniform(0.55, 0.95);
    const double s = inv_pow(n0, t);
    const std::int64_t M1 = rng.uniform_int(1, 12);
    const std::int64_t M2 = rng.uniform_int(M1, 14);
    const double ax = rng.uniform(0, 10) * s;
    const double ay = rng.uniform(0, 10) * s;
    const BlockSpec spec{
        Rect{ax, ay, ax + (M1 + 0.6) * s, ay + (M2 + 0.7) * s}, n0, t, M1, M2};
    const auto sq = place_squares(spec);
    BlockResult res;
    res.squares = sq;
    res.M1 = M1;
    res.M2 = M2;
    res.swapped = false;
    CHECK(sqtest::adjacency_exact(res));
  }
}

TEST_CASE("place_squares: the strict near-lattice relations") {
  const std::int64_t n0 = 100'000;
  const double t = 0.75;
  const double s = inv_pow(n0, t);
  const std::int64_t M1 = 6, M2 = 6;
  const BlockSpec spec{Rect{0, 0, 6.5 * s, 6.5 * s}, n0, t, M1, M2};
  const auto sq = place_squares(spec);
  auto X = [&](std::int64_t i, std::int64_t j) {
    return sq[static_cast<std::size_t>(j * M1 + i)].x_lo;
  };
  auto Y = [&](std::int64_t i, std::int64_t j) {
    return sq[static_cast<std::size_t>(j * M1 + i)].y_lo;
  };
  auto S = [&](std::int64_t i, std::int64_t j) {
    return sq[static_cast<std::size_t>(j * M1 + i)].side;
  };
  for (std::int64_t j = 0; j + 1 < M2; ++j) {
    for (std::int64_t i = 0; i + 1 < M1; ++i) {
      CHECK(Y(i, j) < Y(i + 1, j) + S(i + 1, j));
      CHECK(Y(i + 1, j) + S(i + 1, j) < Y(i, j) + S(i, j));
      CHECK(X(i, j) < X(i, j + 1));
      CHECK(X(i, j + 1) < X(i, j) + S(i, j));
      CHECK(Y(i + 1, j + 1) < Y(i, j + 1));
      CHECK(Y(i, j + 1) < Y(i + 1, j + 1) + S(i + 1, j + 1));
      CHECK(X(i + 1, j) < X(i + 1, j + 1));
      CHECK(X(i + 1, j + 1) < X(i + 1, j) + S(i + 1, j));
    }
  }
}

TEST_CASE("enumerate_gaps: census 6/4/3/1 for a 3x4 block") {
  const std::int64_t n0 = 10'000;
  const double t = 0.75;
  const double s = inv_pow(n0, t);
  const BlockSpec spec{Rect{0, 0, 3.4 * s, 4.6 * s}, n0, t, 3, 4};
  const auto sq = place_squares(spec);
  double disc = 0.0;
  const auto gaps = enumerate_gaps(spec, sq, &disc);
  const auto counts = gap_census(gaps);
  CHECK(counts[0] == 6);  // (M1-1)(M2-1)
  CHECK(counts[1] == 4);  // M2
  CHECK(counts[2] == 3);  // M1
  CHECK(counts[3] == 1);
  CHECK(gaps.size() == 14);
}

TEST_CASE("enumerate_gaps: smallest grid M1 = M2 = 1") {
  const std::int64_t n0 = 500;
  const double t = 0.8;
  const double s = inv_pow(n0, t);
  const BlockSpec spec{Rect{0, 0, 1.3 * s, 1.8 * s}, n0, t, 1, 1};
  const auto sq = place_squares(spec);
  REQUIRE(sq.size() == 1);
  double disc = 0.0;
  const auto gaps = enumerate_gaps(spec, sq, &disc);
  const auto counts = gap_census(gaps);
  CHECK(counts[0] == 0);
  CHECK(counts[1] == 1);
  CHECK(counts[2] == 1);
  CHECK(counts[3] == 1);
}

TEST_CASE("enumerate_gaps: exact lattice (constant sides) drops every surround gap") {
  // t = 0 makes every side exactly 1; the construction degenerates to the
  // lattice packing and the surround family vanishes.
  const BlockSpec spec{Rect{0, 0, 5.25, 6.5}, 17, 0.0, 5, 6};
  const auto sq = place_squares(spec);
  for (const PlacedSquare& q : sq) CHECK(q.side == 1.0);
  double disc = 0.0;
  const auto gaps = enumerate_gaps(spec, sq, &disc);
  const auto counts = gap_census(gaps);
  CHECK(counts[0] == 0);
  CHECK(counts[1] == 6);
  CHECK(counts[2] == 5);
  CHECK(counts[3] == 1);
  CHECK(disc == 0.0);  // zero-extent gaps carry no area
}

TEST_CASE("enumerate_gaps: area bookkeeping against the target rectangle") {
  sqtest::Rng rng(12);
  for (int rep = 0; rep < 25; ++rep) {
    const std::int64_t n0 = rng.uniform_int(1'000, 10'000'000);
    const double t = rng.uniform(0.55, 0.95);
    const double s = inv_pow(n0, t);
    const std::int64_t M1 = rng.uniform_int(1, 14);
    const std::int64_t M2 = rng.uniform_int(M1, 16);
    const BlockSpec spec{Rect{0, 0, (M1 + rng.uniform(0.01, 0.99)) * s,
                              (M2 + rng.uniform(0.01, 0.99)) * s},
                         n0, t, M1, M2};
    const auto sq = place_squares(spec);
    BlockResult res;
    res.squares = sq;
    res.gaps = enumerate_gaps(spec, sq, &res.discarded_area);
    const double covered = sqtest::sum_areas(res);
    const double target = area(spec.rect);
    CHECK(std::fabs(covered - target) <= 1e-10 * target);
  }
}

TEST_CASE("pack_block: index jump, eccentricity bounds, disjointness, containment") {
  sqtest::Rng rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    const double t = rng.uniform(0.55, 0.95);
    const std::int64_t M = rng.uniform_int(2, 16);
    const std::int64_t n0 = rng.uniform_int(10'000, 20'000'000);
    const Params p = Params::make(t, M, n0);
    const Rect rect = sqtest::random_block_rect(t, M, n0, rng);
    Violation why;
    auto res = pack_block(rect, n0, p, &why);
    REQUIRE_MESSAGE(res.has_value(), why.to_message());
    CHECK(res->n0_next - n0 == res->M1 * res->M2);
    CHECK(res->M1 >= M);
    CHECK(res->M2 >= res->M1);
    CHECK(res->M2 <= 3 * M);
    CHECK(res->M1 * res->M2 >= M * M);
    CHECK(res->M1 * res->M2 <= 9 * M * M);
    CHECK(sqtest::adjacency_exact(*res));

    const double s = inv_pow(n0, t);
    const auto items = sqtest::block_footprints(*res);
    CHECK(check_disjoint_bruteforce(items, 1e-12 * s).pass);
    CHECK(check_containment(items, rect, 1e-12 * s).pass);
    const double covered = sqtest::sum_areas(*res);
    CHECK(std::fabs(covered - area(rect)) <= 1e-10 * area(rect));

    // every gap stays O(n0^-t) in both extents; the desk-scale constant is
    // 1 + max(M1,M2) * (relative side decay across the block)
    const double decay = s - inv_pow(res->n0_next - 1, t);
    const double gap_bound = 1.0000001 * (s + static_cast<double>(res->M2) * decay);
    for (const TaggedRect& g : res->gaps) {
      CHECK(g.rect.extent_x() <= gap_bound);
      CHECK(g.rect.extent_y() <= gap_bound);
    }
  }
}

TEST_CASE("pack_block: near-lattice drift bound") {
  sqtest::Rng rng(14);
  for (const std::int64_t M : {4, 8}) {
    for (int rep = 0; rep < 8; ++rep) {
      const double t = rng.uniform(0.6, 0.9);
      const std::int64_t n0 = rng.uniform_int(1'000'000, 30'000'000);
      const Params p = Params::make(t, M, n0);
      const Rect rect = sqtest::random_block_rect(t, M, n0, rng);
      auto res = pack_block(rect, n0, p, nullptr);
      REQUIRE(res.has_value());
      const double s0 = inv_pow(n0, t);
      const double spread = s0 - inv_pow(res->n0_next - 1, t);
      const double bound = static_cast<double>(M * M) * spread + 8.0 * kEps * s0;
      const double w = width(rect);
      auto u = [&](std::int64_t i, std::int64_t j) {
        const PlacedSquare& q = res->squares[static_cast<std::size_t>(j * res->M1 + i)];
        return res->swapped ? q.y_lo : q.x_lo;
      };
      const double u_lo = res->swapped ? rect.y_lo : rect.x_lo;
      for (std::int64_t j = 0; j < res->M2; ++j) {
        for (std::int64_t i = 0; i < res->M1; ++i) {
          const double ideal = u_lo + (w - static_cast<double>(res->M1 - i) * s0);
          CHECK(std::fabs(u(i, j) - ideal) <= bound);
        }
      }
    }
  }
}

TEST_CASE("pack_block: boundary traces") {
  const Params p = Params::make(0.75, 4, 100'000);
  const double s = inv_pow(p.n0, p.t);
  SUBCASE("exact M x M square target") {
    auto res = pack_block(Rect{0, 0, 4.0 * s, 4.0 * s}, p.n0, p, nullptr);
    REQUIRE(res.has_value());
    CHECK(res->M1 == 4);
    CHECK(res->M2 == 4);
    CHECK(res->n0_next == p.n0 + 16);
  }
  SUBCASE("landscape targets run transposed and stay valid") {
    const Rect rect{1.0, 2.0, 1.0 + 9.3 * s, 2.0 + 5.7 * s};
    auto res = pack_block(rect, p.n0, p, nullptr);
    REQUIRE(res.has_value());
    CHECK(res->swapped);
    CHECK(res->M1 == 5);
    CHECK(res->M2 == 9);
    CHECK(sqtest::adjacency_exact(*res));
    const auto items = sqtest::block_footprints(*res);
    CHECK(check_disjoint_bruteforce(items, 1e-12 * s).pass);
    // far from the origin the flush right edge drifts by ulps of the anchor,
    // which dwarf 1e-12 * n0^-t; the slack must scale with the coordinates
    const double far_slack = std::max(1e-12 * s, 512.0 * kEps * rect.y_hi);
    CHECK(check_containment(items, rect, far_slack).pass);
  }
  SUBCASE("strip failing the upper eccentricity bound propagates the inequality") {
    // inflate n0 at fixed strip shape until 3M n'^-t < h
    const Rect strip{0, 0, 4.0 * s, 7.9 * s};
    Violation why;
    CHECK_FALSE(pack_block(strip, 4 * p.n0, p, &why).has_value());
    CHECK(why.check.rfind("eccentricity.upper", 0) == 0);
    CHECK(why.n == 4 * p.n0);
  }
}

TEST_CASE("pack_block: gap perimeter gain improves as M doubles") {
  const double t = 0.75;
  const std::int64_t n0 = 10'000'000;
  double prev_ratio = 1e9;
  for (const std::int64_t M : {4, 8, 16, 32}) {
    const Params p = Params::make(t, M, n0);
    const double s = inv_pow(n0, t);
    const double side = (2.0 * static_cast<double>(M) + 0.5) * s;
    auto res = pack_block(Rect{0, 0, side, side}, n0, p, nullptr);
    REQUIRE(res.has_value());
    const double ratio = res->gap_perim / res->square_perim;
    CHECK(ratio < prev_ratio);
    prev_ratio = ratio;
    // gap perimeter stays O(M n0^-t); the constant is measured
    CHECK(res->gap_perim <= 40.0 * static_cast<double>(M) * s);
  }
}

TEST_CASE("pack_block: Monte Carlo tiling of the target rectangle") {
  sqtest::Rng rng(15);
  const Params p = Params::make(0.72, 5, 100'000);
  const double s = inv_pow(p.n0, p.t);
  const Rect portrait{0, 0, 5.6 * s, 8.2 * s};
  const Rect landscape{0.25 * s, 0.5 * s, 0.25 * s + 9.1 * s, 0.5 * s + 6.3 * s};
  for (const Rect& rect : {portrait, landscape}) {
    auto res = pack_block(rect, p.n0, p, nullptr);
    REQUIRE(res.has_value());
    const auto items = sqtest::block_footprints(*res);
    CHECK(mc_tiling_ok(rect, items, 1000, 1e-9 * s));
  }
}
