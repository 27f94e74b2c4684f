#include "sqpack/block.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sqpack {

namespace {

// Upward nudge for the floor in M1/M2 selection and for the eccentricity
// checks. Covers rounding drift accumulated at exact-multiple boundaries
// (worst observed order 1e-8 absolute on w/s); legitimate fractional parts
// are Theta(1) away from integers.
constexpr double kChooseNudge = 1e-7;

// The construction runs on (u, v) axes with u the width axis; swapped maps
// u onto y. Mapping is pure slot assignment, so the exact adjacency
// identities survive on the corresponding global axis.
struct UvFrame {
  bool swapped = false;
  double u_lo = 0, v_lo = 0, u_hi = 0, v_hi = 0;

  static UvFrame of(const Rect& r, bool swapped) {
    if (!swapped) return UvFrame{false, r.x_lo, r.y_lo, r.x_hi, r.y_hi};
    return UvFrame{true, r.y_lo, r.x_lo, r.y_hi, r.x_hi};
  }
  Rect rect(double u0, double v0, double u1, double v1) const {
    return swapped ? Rect{v0, u0, v1, u1} : Rect{u0, v0, u1, v1};
  }
  Point point(double u, double v) const {
    return swapped ? Point{v, u} : Point{u, v};
  }
};

std::vector<PlacedSquare> place_uv(const UvFrame& f, std::int64_t n0, double t,
                                   std::int64_t M1, std::int64_t M2) {
  const double u_extent = f.u_hi - f.u_lo;
  std::vector<PlacedSquare> out;
  out.reserve(static_cast<std::size_t>(M1 * M2));
  std::vector<double> vcol(static_cast<std::size_t>(M1), f.v_lo);
  for (std::int64_t j = 0; j < M2; ++j) {
    // Row anchor from a compensated row sum: u_{0,j} = u_lo + (w - sum of
    // the row's sides). The squares then chain by plain addition so that
    // u_{i+1,j} = u_{i,j} + side holds bit-for-bit as stored; the right edge
    // of the last column meets w within one ulp per accumulated term.
    KahanAccumulator row;
    for (std::int64_t i = 0; i < M1; ++i) row.add(inv_pow(n0 + j * M1 + i, t));
    double u = f.u_lo + (u_extent - row.value());
    for (std::int64_t i = 0; i < M1; ++i) {
      const std::int64_t n = n0 + j * M1 + i;
      const double side = inv_pow(n, t);
      const Point p = f.point(u, vcol[static_cast<std::size_t>(i)]);
      out.push_back(PlacedSquare{n, side, p.x, p.y});
      u = u + side;
      vcol[static_cast<std::size_t>(i)] = vcol[static_cast<std::size_t>(i)] + side;
    }
  }
  return out;
}

std::vector<TaggedRect> gaps_uv(const UvFrame& f, std::int64_t n0, double t,
                                std::int64_t M1, std::int64_t M2,
                                std::span<const PlacedSquare> sq, double* discarded_area) {
  assert(sq.size() == static_cast<std::size_t>(M1 * M2));
  const double ref = inv_pow(n0, t);
  auto U = [&](std::int64_t i, std::int64_t j) {
    const PlacedSquare& s = sq[static_cast<std::size_t>(j * M1 + i)];
    return f.swapped ? s.y_lo : s.x_lo;
  };
  auto V = [&](std::int64_t i, std::int64_t j) {
    const PlacedSquare& s = sq[static_cast<std::size_t>(j * M1 + i)];
    return f.swapped ? s.x_lo : s.y_lo;
  };
  auto S = [&](std::int64_t i, std::int64_t j) {
    return sq[static_cast<std::size_t>(j * M1 + i)].side;
  };

  std::vector<TaggedRect> out;
  double disc = 0.0;
  auto emit = [&](double u0, double v0, double u1, double v1, RectKind k) {
    const double eu = u1 - u0;
    const double ev = v1 - v0;
    if (is_degenerate(eu, ev, ref)) {
      if (eu > 0.0 && ev > 0.0) disc += eu * ev;
      return;
    }
    out.push_back(TaggedRect{f.rect(u0, v0, u1, v1), k});
  };

  // Surround gaps: S_{i,j}, S_{i+1,j}, S_{i,j+1}, S_{i+1,j+1} enclose the
  // rectangle between the top of S_{i+1,j} and the bottom of S_{i,j+1},
  // running from the right edge of S_{i,j} to the left edge of S_{i+1,j+1}.
  for (std::int64_t j = 0; j + 1 < M2; ++j)
    for (std::int64_t i = 0; i + 1 < M1; ++i)
      emit(U(i + 1, j), V(i + 1, j + 1), U(i + 1, j + 1), V(i, j + 1), RectKind::surround);

  // Left wall gaps, one per row.
  for (std::int64_t j = 0; j < M2; ++j)
    emit(f.u_lo, V(0, j), U(0, j), V(0, j) + S(0, j), RectKind::left);

  // Ceiling gaps above the top row; the last column's gap reaches the wall.
  for (std::int64_t i = 0; i < M1; ++i) {
    const double u1 = (i + 1 < M1) ? U(i, M2 - 1) + S(i, M2 - 1) : f.u_hi;
    emit(U(i, M2 - 1), V(i, M2 - 1) + S(i, M2 - 1), u1, f.v_hi, RectKind::top);
  }

  // Upper-left corner gap.
  emit(f.u_lo, V(0, M2 - 1) + S(0, M2 - 1), U(0, M2 - 1), f.v_hi, RectKind::corner);

  if (discarded_area) *discarded_area += disc;
  return out;
}

}  // namespace

std::string Violation::to_message() const {
  std::ostringstream os;
  os.precision(17);
  os << "inequality failed: " << check << " [lhs=" << lhs << ", rhs=" << rhs
     << ", margin=" << (lhs - rhs) << ", n=" << n << "]";
  return os.str();
}

std::int64_t lex_index(std::int64_t i, std::int64_t j, std::int64_t n0, std::int64_t M1,
                       std::int64_t M2) {
  if (i < 0 || i >= M1 || j < 0 || j >= M2) {
    std::ostringstream os;
    os << "lex_index: (i=" << i << ", j=" << j << ") outside grid " << M1 << "x" << M2;
    throw std::out_of_range(os.str());
  }
  return n0 + j * M1 + i;
}

std::optional<M1M2> choose_M1_M2(const Rect& rect, std::int64_t n0, const Params& p,
                                 Violation* why) {
  const double s = inv_pow(n0, p.t);
  const double w = width(rect);
  const double h = height(rect);
  const double slack = kChooseNudge * s;
  const double Md = static_cast<double>(p.M);
  if (!(w >= Md * s - slack)) {
    if (why) *why = Violation{"eccentricity.lower: M*n0^-t <= w(R)", Md * s, w, n0};
    return std::nullopt;
  }
  if (!(h <= 3.0 * Md * s + slack)) {
    if (why) *why = Violation{"eccentricity.upper: h(R) <= 3M*n0^-t", h, 3.0 * Md * s, n0};
    return std::nullopt;
  }
  M1M2 out;
  out.M1 = nudged_floor(w / s, kChooseNudge);
  out.M2 = nudged_floor(h / s, kChooseNudge);
  // Exact-boundary clamp: equality cases of the eccentricity bounds stay in
  // range instead of rejecting.
  out.M1 = std::clamp<std::int64_t>(out.M1, p.M, 3 * p.M);
  out.M2 = std::clamp<std::int64_t>(out.M2, out.M1, 3 * p.M);
  return out;
}

std::vector<PlacedSquare> place_squares(const BlockSpec& spec) {
  return place_uv(UvFrame::of(spec.rect, false), spec.n0, spec.t, spec.M1, spec.M2);
}

std::vector<TaggedRect> enumerate_gaps(const BlockSpec& spec,
                                       std::span<const PlacedSquare> squares,
                                       double* discarded_area) {
  return gaps_uv(UvFrame::of(spec.rect, false), spec.n0, spec.t, spec.M1, spec.M2, squares,
                 discarded_area);
}

std::optional<BlockResult> pack_block(const Rect& rect, std::int64_t n0, const Params& p,
                                      Violation* why) {
  auto mm = choose_M1_M2(rect, n0, p, why);
  if (!mm) return std::nullopt;

  const bool swapped = rect.extent_x() > rect.extent_y();
  const UvFrame f = UvFrame::of(rect, swapped);

  BlockResult res;
  res.M1 = mm->M1;
  res.M2 = mm->M2;
  res.swapped = swapped;
  res.squares = place_uv(f, n0, p.t, mm->M1, mm->M2);

  // Containment gate. Can only trip if the preconditions were violated
  // upstream; tolerance covers the plain-addition drift of the chained
  // coordinates (at most ~M1 + M2 ulps of the coordinate magnitude).
  const double s0 = inv_pow(n0, p.t);
  const double coord = std::max({std::fabs(f.u_hi), std::fabs(f.v_hi), 1e-300});
  const double tol = std::max(1e-12 * s0,
                              64.0 * kEps * coord * static_cast<double>(mm->M1 + mm->M2));
  for (std::int64_t j = 0; j < mm->M2; ++j) {
    for (std::int64_t i = 0; i < mm->M1; ++i) {
      const PlacedSquare& q = res.squares[static_cast<std::size_t>(j * mm->M1 + i)];
      const double u = swapped ? q.y_lo : q.x_lo;
      const double v = swapped ? q.x_lo : q.y_lo;
      const double worst = std::min(std::min(u - f.u_lo, f.u_hi - (u + q.side)),
                                    std::min(v - f.v_lo, f.v_hi - (v + q.side)));
      if (worst < -tol) {
        if (why) {
          std::ostringstream os;
          os << "containment: S_{" << i << "," << j << "} inside R";
          *why = Violation{os.str(), worst, -tol, q.n};
        }
        return std::nullopt;
      }
    }
  }

  res.gaps = gaps_uv(f, n0, p.t, mm->M1, mm->M2, res.squares, &res.discarded_area);
  res.n0_next = n0 + mm->M1 * mm->M2;

  KahanAccumulator sq_perim;
  for (const PlacedSquare& q : res.squares) sq_perim.add(4.0 * q.side);
  res.square_perim = sq_perim.value();
  std::vector<Rect> gap_rects;
  gap_rects.reserve(res.gaps.size());
  for (const TaggedRect& g : res.gaps) gap_rects.push_back(g.rect);
  res.gap_perim = unweighted_perim(gap_rects);
  return res;
}

}  // namespace sqpack
