#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sqpack/common.hpp"

namespace sqpack {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Closed axis-aligned rectangle. Stored rectangles are nondegenerate:
/// x_lo < x_hi and y_lo < y_hi.
struct Rect {
  double x_lo = 0.0;
  double y_lo = 0.0;
  double x_hi = 0.0;
  double y_hi = 0.0;

  double extent_x() const { return x_hi - x_lo; }
  double extent_y() const { return y_hi - y_lo; }
  bool valid() const { return x_lo < x_hi && y_lo < y_hi; }
  bool operator==(const Rect&) const = default;
};

/// Smaller of the two sidelengths.
double width(const Rect& r);
/// Larger of the two sidelengths.
double height(const Rect& r);
double area(const Rect& r);

/// w(r)^delta * h(r), one term of the weighted total perimeter perim_delta.
double weighted_perim_term(const Rect& r, double delta);

/// sum of 2*(w+h) over the collection.
double unweighted_perim(std::span<const Rect> rs);

struct PlacedSquare {
  std::int64_t n = 0;
  double side = 0.0;  // n^{-t}, always from the shared inv_pow routine
  double x_lo = 0.0;
  double y_lo = 0.0;

  Rect footprint() const { return Rect{x_lo, y_lo, x_lo + side, y_lo + side}; }
  bool operator==(const PlacedSquare&) const = default;
};

/// Role of a residual rectangle. The first three arise in the engine, the
/// last four are the block packer's gap families.
enum class RectKind : std::int8_t { init, r0, strip, surround, left, top, corner };
const char* to_string(RectKind k);
bool rect_kind_from_string(const char* s, RectKind& out);

struct TaggedRect {
  Rect rect;
  RectKind kind = RectKind::init;
  bool operator==(const TaggedRect&) const = default;
};

/// Reflection across the diagonal through (ox, oy). Applying it twice is the
/// identity (in exact arithmetic; bit-exact when ox = oy = 0).
struct FrameMap {
  double ox = 0.0;
  double oy = 0.0;
  bool swapped = false;

  Point apply(Point p) const;
  Rect apply(const Rect& r) const;
};

/// The rectangle reflected across the diagonal through its lower-left corner,
/// plus the involutive map between the two frames.
std::pair<Rect, FrameMap> transpose_frame(const Rect& r);

/// Degenerate-drop rule: an extent below 1e-15 * ref_scale does not survive
/// as a residual rectangle.
bool is_degenerate(double extent_x, double extent_y, double ref_scale);

/// Residual family with cached total area and weighted total perimeter.
/// Single writer; concurrent readers are fine between mutations.
class Family {
 public:
  explicit Family(double delta) : delta_(delta) {}

  std::size_t size() const { return rects_.size(); }
  bool empty() const { return rects_.empty(); }
  const Rect& at(std::size_t i) const { return rects_[i]; }
  RectKind kind_at(std::size_t i) const { return kinds_[i]; }
  const std::vector<Rect>& rects() const { return rects_; }

  void insert(const Rect& r, RectKind kind = RectKind::init);
  void remove(std::size_t i);  // swap-pop; indices above i move

  double area() const { return area_.value(); }
  double weighted_perim() const { return wperim_.value(); }
  double delta() const { return delta_; }

  /// Rebuild both caches from scratch (bounds incremental drift).
  void refresh_caches();
  double recompute_area() const;
  double recompute_weighted_perim() const;

  /// Index of a rectangle of maximal width; ties broken by smallest
  /// (y_lo, x_lo) lexicographically.
  std::size_t widest_index() const;
  double max_height() const;

 private:
  double delta_;
  std::vector<Rect> rects_;
  std::vector<RectKind> kinds_;
  KahanAccumulator area_;
  KahanAccumulator wperim_;
};

}  // namespace sqpack
