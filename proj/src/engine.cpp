#include "sqpack/engine.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>

#include "sqpack/series.hpp"

namespace sqpack {

namespace {

constexpr double kAreaRelTol = 1e-8;    // conservation vs the tail target
constexpr double kDecompRelTol = 1e-12; // per-step wperim decomposition

}  // namespace

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::width_too_small: return "width_too_small";
    case RunStatus::block_precondition: return "block_precondition";
    case RunStatus::invariant_violation: return "invariant_violation";
  }
  return "?";
}

Rect select_widest(const Family& family) { return family.at(family.widest_index()); }

std::optional<SplitResult> split(const Rect& r, std::int64_t n_current, const Params& p,
                                 Violation* why) {
  const double s = inv_pow(n_current, p.t);
  const double strip_w = static_cast<double>(p.M) * s;
  const double w = width(r);
  if (!(w >= 2.0 * strip_w)) {
    if (why) *why = Violation{"min-width: w(R) >= 2M*n^-t", w, 2.0 * strip_w, n_current};
    return std::nullopt;
  }

  // Work with u as the width axis; R* is the slab nearest the origin.
  const bool x_is_width = r.extent_x() <= r.extent_y();
  const double u_lo = x_is_width ? r.x_lo : r.y_lo;
  const double u_hi = x_is_width ? r.x_hi : r.y_hi;
  const double v_lo = x_is_width ? r.y_lo : r.x_lo;
  const double v_hi = x_is_width ? r.y_hi : r.x_hi;
  auto make = [&](double u0, double v0, double u1, double v1) {
    return x_is_width ? Rect{u0, v0, u1, v1} : Rect{v0, u0, v1, u1};
  };

  const double h = v_hi - v_lo;
  const double q = h / strip_w;
  // Cut squares of height M n^-t until the remainder dips below 2M n^-t;
  // that leaves m = floor(q) strips, the last taking the remainder.
  std::int64_t m = nudged_floor(q, 4.0 * kEps * q + 1e-12);
  assert(m >= 2);
  // Crude bound m <= n^t, a consequence of the height hypothesis h(R) <= 1.
  if (static_cast<double>(m) > 1.0 / s + 1.0) {
    if (why)
      *why = Violation{"strip-count: m <= n^t", static_cast<double>(m), 1.0 / s, n_current};
    return std::nullopt;
  }

  SplitResult out;
  const double split_u = u_lo + strip_w;
  if (u_hi - split_u > 0.0) out.r0 = make(split_u, v_lo, u_hi, v_hi);

  out.strips.reserve(static_cast<std::size_t>(m));
  double edge = v_lo;
  for (std::int64_t k = 0; k < m; ++k) {
    const double next = (k + 1 == m) ? v_hi : v_lo + static_cast<double>(k + 1) * strip_w;
    out.strips.push_back(make(u_lo, edge, split_u, next));
    edge = next;
  }
  return out;
}

PackingState::PackingState(const Params& p)
    : params_(p), n_current_(p.n0), family_(p.delta()) {
  params_.validate();
  tail0_ = tail_sum(2.0 * params_.t, params_.n0);
  initial_side_ = std::sqrt(tail0_.value);
  family_.insert(Rect{0.0, 0.0, initial_side_, initial_side_}, RectKind::init);

  // Budget accumulator starts at sum_{n=1}^{n0-1} n^-(t+dt).
  const double sdt = params_.t + params_.delta() * params_.t;
  budget_sum_.add(partial_sum(sdt, 1, params_.n0 - 1));

  // Step-0 record, including the derivation's check that the initial
  // square's weighted perimeter sits under the budget.
  StepRecord rec;
  rec.step = 0;
  rec.n_start = rec.n_end = params_.n0;
  rec.family_area = family_.area();
  rec.expected_area = tail0_.value;
  rec.family_wperim = family_.weighted_perim();
  rec.budget = std::pow(static_cast<double>(params_.M), -1.0 + 0.5 * params_.delta()) *
               budget_sum_.value();
  rec.budget_ratio = rec.budget > 0.0 ? rec.family_wperim / rec.budget : 0.0;
  rec.max_height = initial_side_;
  rec.init_derivation_bound =
      std::pow(static_cast<double>(params_.n0), (0.5 - params_.t) * (1.0 + params_.delta()));
  ledger_.push_back(rec);
}

double PackingState::expected_area() const { return tail0_.value - spent_series_.value(); }

Rect PackingState::outer() const { return Rect{0.0, 0.0, initial_side_, initial_side_}; }

void PackingState::record_step(StepRecord rec, double wperim_before, double decomp_delta,
                               RunReport& report) {
  family_.refresh_caches();
  rec.family_area = family_.area();
  rec.expected_area = expected_area();
  rec.family_wperim = family_.weighted_perim();
  rec.max_height = family_.max_height();
  rec.placed_total = static_cast<std::int64_t>(placed_.size());
  rec.discarded_area_total = discarded_;
  rec.max_nprime_ratio =
      static_cast<double>(rec.n_end) / static_cast<double>(rec.n_start);

  const double sdt = params_.t + params_.delta() * params_.t;
  budget_sum_.add(partial_sum(sdt, rec.n_start, rec.n_end - 1));
  rec.budget = std::pow(static_cast<double>(params_.M), -1.0 + 0.5 * params_.delta()) *
               budget_sum_.value();
  rec.budget_ratio = rec.budget > 0.0 ? rec.family_wperim / rec.budget : 0.0;

  // perim_delta update decomposition:
  //   wperim(R') = wperim(R) - w(R)^d h(R) + w(R0)^d h(R0) + sum over added.
  const double predicted = wperim_before + decomp_delta;
  rec.decomp_rel_err = std::fabs(rec.family_wperim - predicted) /
                       std::max(std::fabs(rec.family_wperim), 1e-300);
  if (rec.decomp_rel_err > kDecompRelTol) {
    report.status = RunStatus::invariant_violation;
    report.detail = "weighted-perimeter delta decomposition left tolerance";
  }

  // Conservation: area(placed) + area(family) = tail_sum(2t, n0).
  const double total = rec.family_area + placed_area_.value();
  const double rel = std::fabs(total - tail0_.value) / tail0_.value;
  if (rel > kAreaRelTol) {
    report.status = RunStatus::invariant_violation;
    report.detail = "area conservation left tolerance";
  }

  ledger_.push_back(rec);
}

bool PackingState::step(const StopRule& stop, RunReport& report) {
  if (family_.empty()) {
    report.detail = "family empty";
    return false;
  }
  if (stop.max_squares &&
      static_cast<std::int64_t>(placed_.size()) >= *stop.max_squares) {
    report.detail = "square budget reached";
    return false;
  }

  const std::size_t idx = family_.widest_index();
  const Rect target = family_.at(idx);

  Violation why;
  auto sp = split(target, n_current_, params_, &why);
  if (!sp) {
    report.status = why.check.rfind("min-width", 0) == 0
                        ? RunStatus::width_too_small
                        : RunStatus::block_precondition;
    report.failure = why;
    return false;
  }

  const double wperim_before = family_.weighted_perim();
  KahanAccumulator decomp;
  decomp.add(-weighted_perim_term(target, params_.delta()));
  family_.remove(idx);

  StepRecord rec;
  rec.step = static_cast<std::int64_t>(ledger_.size());
  rec.n_start = n_current_;
  rec.strips = static_cast<std::int64_t>(sp->strips.size());

  if (sp->r0) {
    if (!is_degenerate(sp->r0->extent_x(), sp->r0->extent_y(),
                       inv_pow(n_current_, params_.t))) {
      family_.insert(*sp->r0, RectKind::r0);
      decomp.add(weighted_perim_term(*sp->r0, params_.delta()));
    } else {
      discarded_ += area(*sp->r0);
    }
  }

  // Strips consume the running index in stacking order. A stop rule or a
  // precondition failure leaves the rest in the family unpacked.
  bool stopped = false;
  std::int64_t nprime = n_current_;
  const double two_t = 2.0 * params_.t;
  for (std::size_t k = 0; k < sp->strips.size(); ++k) {
    const Rect& strip = sp->strips[k];
    auto park_remaining = [&]() {
      for (std::size_t r = k; r < sp->strips.size(); ++r) {
        family_.insert(sp->strips[r], RectKind::strip);
        decomp.add(weighted_perim_term(sp->strips[r], params_.delta()));
      }
    };

    if (stop.max_squares &&
        static_cast<std::int64_t>(placed_.size()) >= *stop.max_squares) {
      park_remaining();
      stopped = true;
      report.detail = "square budget reached";
      break;
    }

    Violation strip_why;
    auto choice = choose_M1_M2(strip, nprime, params_, &strip_why);
    if (!choice) {
      park_remaining();
      n_current_ = nprime;
      rec.n_end = nprime;
      rec.blocks_packed = static_cast<std::int64_t>(k);
      report.status = RunStatus::block_precondition;
      report.failure = strip_why;
      record_step(rec, wperim_before, decomp.value(), report);
      return false;
    }

    // A block straddling n_max is not started; contiguity is preserved.
    if (params_.n_max && nprime + choice->M1 * choice->M2 - 1 >= *params_.n_max) {
      park_remaining();
      stopped = true;
      report.detail = "n_max reached";
      break;
    }

    auto res = pack_block(strip, nprime, params_, &strip_why);
    if (!res) {
      park_remaining();
      n_current_ = nprime;
      rec.n_end = nprime;
      rec.blocks_packed = static_cast<std::int64_t>(k);
      report.status = RunStatus::block_precondition;
      report.failure = strip_why;
      record_step(rec, wperim_before, decomp.value(), report);
      return false;
    }

    for (const PlacedSquare& q : res->squares) {
      placed_.push_back(q);
      placed_area_.add(q.side * q.side);
      spent_series_.add(inv_pow(q.n, two_t));
    }
    for (const TaggedRect& g : res->gaps) {
      family_.insert(g.rect, g.kind);
      decomp.add(weighted_perim_term(g.rect, params_.delta()));
    }
    discarded_ += res->discarded_area;
    nprime = res->n0_next;
    rec.blocks_packed += 1;
  }

  n_current_ = nprime;
  rec.n_end = nprime;
  record_step(rec, wperim_before, decomp.value(), report);
  return report.status == RunStatus::ok && !stopped;
}

RunReport PackingState::run(const StopRule& stop) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  while (step(stop, report)) {
  }
  report.steps = static_cast<std::int64_t>(ledger_.size()) - 1;
  report.squares_placed = static_cast<std::int64_t>(placed_.size());
  report.n_final = n_current_;
  family_.refresh_caches();
  report.family_area = family_.area();
  report.expected_tail = expected_area();
  report.area_rel_gap =
      std::fabs(report.family_area + placed_area_.value() - tail0_.value) / tail0_.value;
  report.initial_height = initial_side_;
  report.max_height_final = family_.max_height();
  report.wperim_final = family_.weighted_perim();
  report.budget_final = ledger_.back().budget;
  for (const StepRecord& r : ledger_)
    report.max_budget_ratio = std::max(report.max_budget_ratio, r.budget_ratio);
  report.discarded_area = discarded_;
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

}  // namespace sqpack
