#include "sqpack/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace sqpack {

double width(const Rect& r) { return std::min(r.extent_x(), r.extent_y()); }

double height(const Rect& r) { return std::max(r.extent_x(), r.extent_y()); }

double area(const Rect& r) { return r.extent_x() * r.extent_y(); }

double weighted_perim_term(const Rect& r, double delta) {
  return std::pow(width(r), delta) * height(r);
}

double unweighted_perim(std::span<const Rect> rs) {
  KahanAccumulator acc;
  for (const Rect& r : rs) acc.add(2.0 * (width(r) + height(r)));
  return acc.value();
}

const char* to_string(RectKind k) {
  switch (k) {
    case RectKind::init: return "init";
    case RectKind::r0: return "r0";
    case RectKind::strip: return "strip";
    case RectKind::surround: return "surround";
    case RectKind::left: return "left";
    case RectKind::top: return "top";
    case RectKind::corner: return "corner";
  }
  return "?";
}

bool rect_kind_from_string(const char* s, RectKind& out) {
  for (RectKind k : {RectKind::init, RectKind::r0, RectKind::strip, RectKind::surround,
                     RectKind::left, RectKind::top, RectKind::corner}) {
    if (std::strcmp(s, to_string(k)) == 0) {
      out = k;
      return true;
    }
  }
  return false;
}

Point FrameMap::apply(Point p) const {
  if (!swapped) return p;
  return Point{ox + (p.y - oy), oy + (p.x - ox)};
}

Rect FrameMap::apply(const Rect& r) const {
  if (!swapped) return r;
  const Point lo = apply(Point{r.x_lo, r.y_lo});
  const Point hi = apply(Point{r.x_hi, r.y_hi});
  return Rect{lo.x, lo.y, hi.x, hi.y};
}

std::pair<Rect, FrameMap> transpose_frame(const Rect& r) {
  FrameMap map{r.x_lo, r.y_lo, true};
  return {map.apply(r), map};
}

bool is_degenerate(double extent_x, double extent_y, double ref_scale) {
  const double floor = 1e-15 * ref_scale;
  return !(extent_x > floor) || !(extent_y > floor);
}

void Family::insert(const Rect& r, RectKind kind) {
  if (!r.valid()) throw std::invalid_argument("Family::insert: degenerate rectangle");
  rects_.push_back(r);
  kinds_.push_back(kind);
  area_.add(sqpack::area(r));
  wperim_.add(weighted_perim_term(r, delta_));
}

void Family::remove(std::size_t i) {
  assert(i < rects_.size());
  area_.add(-sqpack::area(rects_[i]));
  wperim_.add(-weighted_perim_term(rects_[i], delta_));
  rects_[i] = rects_.back();
  kinds_[i] = kinds_.back();
  rects_.pop_back();
  kinds_.pop_back();
}

void Family::refresh_caches() {
  area_.reset();
  wperim_.reset();
  for (const Rect& r : rects_) {
    area_.add(sqpack::area(r));
    wperim_.add(weighted_perim_term(r, delta_));
  }
}

double Family::recompute_area() const {
  KahanAccumulator acc;
  for (const Rect& r : rects_) acc.add(sqpack::area(r));
  return acc.value();
}

double Family::recompute_weighted_perim() const {
  KahanAccumulator acc;
  for (const Rect& r : rects_) acc.add(weighted_perim_term(r, delta_));
  return acc.value();
}

std::size_t Family::widest_index() const {
  assert(!rects_.empty());
  std::size_t best = 0;
  double best_w = width(rects_[0]);
  for (std::size_t i = 1; i < rects_.size(); ++i) {
    const double w = width(rects_[i]);
    if (w > best_w) {
      best = i;
      best_w = w;
    } else if (w == best_w) {
      const Rect& a = rects_[i];
      const Rect& b = rects_[best];
      if (a.y_lo < b.y_lo || (a.y_lo == b.y_lo && a.x_lo < b.x_lo)) best = i;
    }
  }
  return best;
}

double Family::max_height() const {
  double h = 0.0;
  for (const Rect& r : rects_) h = std::max(h, height(r));
  return h;
}

}  // namespace sqpack
