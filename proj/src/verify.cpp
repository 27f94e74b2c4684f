#include "sqpack/verify.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <sstream>

#include "sqpack/series.hpp"

namespace sqpack {

namespace {

// Shared pair predicate: both modes evaluate the identical expressions, so
// sweep and brute force agree bit-for-bit.
inline bool overlap_exceeds(const Rect& a, const Rect& b, double slack, double& area_out) {
  const double ox = std::min(a.x_hi, b.x_hi) - std::max(a.x_lo, b.x_lo);
  if (!(ox > slack)) return false;
  const double oy = std::min(a.y_hi, b.y_hi) - std::max(a.y_lo, b.y_lo);
  if (!(oy > slack)) return false;
  area_out = ox * oy;
  return true;
}

// Interval-stabbing store over compressed y coordinates: a segment tree whose
// nodes hold the ids of active rectangles covering their segment. Supports
// insert/erase in O(log m) and stab-report in O(log m + hits).
class StabStore {
 public:
  struct Entry {
    std::int32_t id;
    std::int32_t slot;  // index into the owner's slot list
  };
  struct Slot {
    std::size_t node;
    std::size_t pos;
  };

  explicit StabStore(std::vector<double> coords) : coords_(std::move(coords)) {
    const std::size_t leaves = coords_.size() > 1 ? coords_.size() - 1 : 1;
    size_ = 1;
    while (size_ < leaves) size_ <<= 1;
    lists_.resize(2 * size_);
  }

  std::size_t coord_index(double y) const {
    return static_cast<std::size_t>(
        std::lower_bound(coords_.begin(), coords_.end(), y) - coords_.begin());
  }

  void insert(std::int32_t id, std::size_t il, std::size_t ih, std::vector<Slot>& slots) {
    insert_rec(1, 0, size_, il, ih, id, slots);
  }

  void erase(std::int32_t id, const std::vector<Slot>& slots,
             std::vector<std::vector<Slot>>& all_slots) {
    for (const Slot& s : slots) {
      auto& list = lists_[s.node];
      const Entry moved = list.back();
      list[s.pos] = moved;
      list.pop_back();
      if (moved.id != id)
        all_slots[static_cast<std::size_t>(moved.id)][static_cast<std::size_t>(moved.slot)]
            .pos = s.pos;
    }
  }

  template <typename Fn>
  void stab(std::size_t leaf, Fn&& fn) const {
    std::size_t v = size_ + leaf;
    while (v >= 1) {
      for (const Entry& e : lists_[v]) fn(e.id);
      if (v == 1) break;
      v >>= 1;
    }
  }

 private:
  void insert_rec(std::size_t v, std::size_t lo, std::size_t hi, std::size_t il,
                  std::size_t ih, std::int32_t id, std::vector<Slot>& slots) {
    if (ih <= lo || hi <= il) return;
    if (il <= lo && hi <= ih) {
      slots.push_back(Slot{v, lists_[v].size()});
      lists_[v].push_back(Entry{id, static_cast<std::int32_t>(slots.size() - 1)});
      return;
    }
    const std::size_t mid = (lo + hi) / 2;
    insert_rec(2 * v, lo, mid, il, ih, id, slots);
    insert_rec(2 * v + 1, mid, hi, il, ih, id, slots);
  }

  std::vector<double> coords_;
  std::size_t size_ = 1;
  std::vector<std::vector<Entry>> lists_;
};

}  // namespace

DisjointReport check_disjoint(std::span<const Rect> items, double slack, std::size_t cap) {
  DisjointReport rep;
  const std::size_t n = items.size();
  if (n < 2) return rep;

  std::vector<double> coords;
  coords.reserve(2 * n);
  for (const Rect& r : items) {
    coords.push_back(r.y_lo);
    coords.push_back(r.y_hi);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

  StabStore store(coords);
  std::vector<std::vector<StabStore::Slot>> slots(n);
  // Ordered active set keyed by y_lo, for candidates opening above the probe.
  std::multiset<std::pair<double, std::int32_t>> by_lo;
  std::vector<std::multiset<std::pair<double, std::int32_t>>::iterator> by_lo_it(n);

  struct Event {
    double x;
    std::int8_t open;  // close events first at equal x: shared edges are legal
    std::int32_t id;
  };
  std::vector<Event> events;
  events.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    events.push_back(Event{items[i].x_lo, 1, static_cast<std::int32_t>(i)});
    events.push_back(Event{items[i].x_hi, 0, static_cast<std::int32_t>(i)});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.open != b.open) return a.open < b.open;
    return a.id < b.id;
  });

  auto consider = [&](std::int32_t a, std::int32_t b) {
    double ov_area = 0.0;
    if (overlap_exceeds(items[static_cast<std::size_t>(a)],
                        items[static_cast<std::size_t>(b)], slack, ov_area)) {
      if (rep.violations.size() < cap) {
        rep.violations.push_back(OverlapPair{std::min(a, b), std::max(a, b), ov_area});
      } else {
        rep.truncated = true;
      }
      rep.pass = false;
    }
  };

  for (const Event& ev : events) {
    const std::size_t i = static_cast<std::size_t>(ev.id);
    const Rect& r = items[i];
    if (ev.open) {
      // Candidates holding r.y_lo in their closed y-range...
      store.stab(store.coord_index(r.y_lo), [&](std::int32_t other) { consider(other, ev.id); });
      // ...plus candidates whose y_lo lies strictly inside (r.y_lo, r.y_hi).
      for (auto it = by_lo.upper_bound({r.y_lo, INT32_MAX});
           it != by_lo.end() && it->first < r.y_hi; ++it) {
        consider(it->second, ev.id);
      }
      store.insert(ev.id, store.coord_index(r.y_lo), store.coord_index(r.y_hi), slots[i]);
      by_lo_it[i] = by_lo.insert({r.y_lo, ev.id});
    } else {
      store.erase(ev.id, slots[i], slots);
      slots[i].clear();
      by_lo.erase(by_lo_it[i]);
    }
  }
  return rep;
}

DisjointReport check_disjoint_bruteforce(std::span<const Rect> items, double slack,
                                         std::size_t cap) {
  DisjointReport rep;
  const std::int64_t n = static_cast<std::int64_t>(items.size());
  if (n < 2) return rep;
  std::vector<std::vector<OverlapPair>> per_row(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    auto& row = per_row[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < n; ++j) {
      double ov_area = 0.0;
      if (overlap_exceeds(items[static_cast<std::size_t>(i)],
                          items[static_cast<std::size_t>(j)], slack, ov_area)) {
        row.push_back(OverlapPair{static_cast<std::int32_t>(i),
                                  static_cast<std::int32_t>(j), ov_area});
      }
    }
  }
  for (const auto& row : per_row) {
    for (const OverlapPair& p : row) {
      if (rep.violations.size() < cap) {
        rep.violations.push_back(p);
      } else {
        rep.truncated = true;
      }
      rep.pass = false;
    }
  }
  return rep;
}

ContainReport check_containment(std::span<const Rect> items, const Rect& outer,
                                double slack) {
  ContainReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Rect& r = items[i];
    const double margin =
        std::min(std::min(r.x_lo - outer.x_lo, outer.x_hi - r.x_hi),
                 std::min(r.y_lo - outer.y_lo, outer.y_hi - r.y_hi));
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_index = static_cast<std::int32_t>(i);
    }
  }
  if (items.empty()) rep.worst_margin = 0.0;
  rep.pass = rep.worst_margin >= -slack;
  return rep;
}

AccountingReport check_accounting(const PackingCertificate& cert) {
  AccountingReport rep;
  const double outer_area = area(cert.outer);

  KahanAccumulator sq_area;
  for (const PlacedSquare& q : cert.squares) sq_area.add(q.side * q.side);
  KahanAccumulator res_area;
  KahanAccumulator res_wperim;
  const double delta = cert.params.delta();
  double sup_h = 0.0;
  for (const TaggedRect& t : cert.residuals) {
    res_area.add(area(t.rect));
    res_wperim.add(weighted_perim_term(t.rect, delta));
    sup_h = std::max(sup_h, height(t.rect));
  }

  const double tiled = sq_area.value() + res_area.value() + cert.discarded_area;
  rep.tiling_rel_gap = std::fabs(tiled - outer_area) / std::max(outer_area, 1e-300);
  rep.tiling_pass = rep.tiling_rel_gap <= 1e-10;

  // The zeta-tail identities only bind certificates that started from the
  // canonical initial square of area tail_sum(2t, n_lo).
  const SeriesValue tail_lo = tail_sum(2.0 * cert.params.t, cert.n_lo);
  rep.tail_applicable =
      std::fabs(outer_area - tail_lo.value) <= 1e-8 * tail_lo.value;
  if (rep.tail_applicable) {
    const SeriesValue tail_hi = tail_sum(2.0 * cert.params.t, cert.n_hi);
    rep.residual_vs_tail_rel =
        std::fabs(res_area.value() - tail_hi.value) / tail_hi.value;
    rep.tail_pass = rep.residual_vs_tail_rel <= 1e-8;
    rep.height_bound = std::sqrt(tail_lo.value);
  } else {
    rep.height_bound = height(cert.outer);
  }
  rep.sup_height = sup_h;
  rep.height_pass = sup_h <= rep.height_bound * (1.0 + 1e-12);

  rep.budget_ratio = cert.n_hi >= 2
                      ? res_wperim.value() / perimeter_budget(cert.params, cert.n_hi)
                      : 0.0;

  // Index contiguity: the placed indices are exactly {n_lo, ..., n_hi - 1}.
  std::vector<std::int64_t> ns;
  ns.reserve(cert.squares.size());
  for (const PlacedSquare& q : cert.squares) ns.push_back(q.n);
  std::sort(ns.begin(), ns.end());
  if (static_cast<std::int64_t>(ns.size()) != cert.n_hi - cert.n_lo) {
    rep.contiguity_pass = false;
    std::ostringstream os;
    os << "expected " << (cert.n_hi - cert.n_lo) << " squares, got " << ns.size();
    rep.contiguity_detail = os.str();
  } else {
    for (std::size_t k = 0; k < ns.size(); ++k) {
      if (ns[k] != cert.n_lo + static_cast<std::int64_t>(k)) {
        rep.contiguity_pass = false;
        std::ostringstream os;
        os << "index " << (cert.n_lo + static_cast<std::int64_t>(k))
           << " missing or duplicated (found " << ns[k] << ")";
        rep.contiguity_detail = os.str();
        break;
      }
    }
  }

  // Sides are recomputed from (n, t), never trusted.
  for (const PlacedSquare& q : cert.squares) {
    const double want = inv_pow(q.n, cert.params.t);
    const double rel = std::fabs(q.side - want) / want;
    if (rel > rep.worst_side_rel) {
      rep.worst_side_rel = rel;
      rep.worst_side_n = q.n;
    }
  }
  rep.sides_pass = rep.worst_side_rel <= 1e-14;

  rep.discarded_pass = cert.discarded_area <= 1e-12 * outer_area;
  return rep;
}

VerificationReport verify_certificate(const PackingCertificate& cert, VerifyLevel level) {
  VerificationReport rep;
  std::vector<Rect> items;
  items.reserve(cert.squares.size() + cert.residuals.size());
  for (const PlacedSquare& q : cert.squares) items.push_back(q.footprint());
  for (const TaggedRect& t : cert.residuals) items.push_back(t.rect);

  const double scale = std::max(cert.outer.extent_x(), cert.outer.extent_y());
  const double slack = 1e-12 * scale;
  const std::size_t cap = 1 << 20;
  rep.disjoint = check_disjoint(items, slack, cap);
  if (level == VerifyLevel::full_bruteforce) {
    DisjointReport brute = check_disjoint_bruteforce(items, slack, cap);
    auto key = [](const OverlapPair& p) {
      return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.a)) << 32) |
             static_cast<std::uint32_t>(p.b);
    };
    std::vector<std::uint64_t> ka, kb;
    for (const auto& p : rep.disjoint.violations) ka.push_back(key(p));
    for (const auto& p : brute.violations) kb.push_back(key(p));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    rep.oracle_agrees = (ka == kb) && (rep.disjoint.pass == brute.pass);
  }
  rep.contain = check_containment(items, cert.outer, slack);
  rep.accounting = check_accounting(cert);
  return rep;
}

}  // namespace sqpack
