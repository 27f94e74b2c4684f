#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqpack/block.hpp"
#include "sqpack/geometry.hpp"
#include "sqpack/params.hpp"

namespace sqpack {

/// One ledger entry per induction step (step 0 records the initial state).
struct StepRecord {
  std::int64_t step = 0;
  std::int64_t n_start = 0;
  std::int64_t n_end = 0;
  std::int64_t strips = 0;         // m in the subdivision R = R0 u R1 u ... u Rm
  std::int64_t blocks_packed = 0;  // strips actually packed this step
  std::int64_t placed_total = 0;
  double family_area = 0.0;
  double expected_area = 0.0;  // tail-tracked target for family_area
  double family_wperim = 0.0;
  double budget = 0.0;        // weighted-perimeter budget at n_end
  double budget_ratio = 0.0;  // family_wperim / budget
  double max_height = 0.0;
  double decomp_rel_err = 0.0;  // per-step wperim delta decomposition residual
  double max_nprime_ratio = 1.0;  // n_end / n_start
  double discarded_area_total = 0.0;
  double init_derivation_bound = 0.0;  // step 0 only: n0^{(1/2-t)(1+delta)}
};

enum class RunStatus {
  ok,                   // stop rule satisfied (budget or n_max), or no work
  width_too_small,      // the algorithm's documented terminal error branch
  block_precondition,   // a strip failed the block eccentricity bounds
  invariant_violation,  // internal accounting left tolerance; not a valid stop
};
const char* to_string(RunStatus s);

struct RunReport {
  RunStatus status = RunStatus::ok;
  std::optional<Violation> failure;
  std::string detail;
  std::int64_t steps = 0;
  std::int64_t squares_placed = 0;
  std::int64_t n_final = 0;
  double family_area = 0.0;
  double expected_tail = 0.0;
  double area_rel_gap = 0.0;
  double initial_height = 0.0;
  double max_height_final = 0.0;
  double wperim_final = 0.0;
  double budget_final = 0.0;
  double max_budget_ratio = 0.0;
  double discarded_area = 0.0;
  double wall_ms = 0.0;

  /// True for every outcome the algorithm documents, including its own
  /// "terminate with error" branch. Only accounting failures are unclean.
  bool clean_termination() const { return status != RunStatus::invariant_violation; }
};

struct StopRule {
  std::optional<std::int64_t> max_squares;
};

struct SplitResult {
  std::optional<Rect> r0;    // empty only when w(R) = M n^-t exactly
  std::vector<Rect> strips;  // stacked from the origin corner outward
};

/// R selected for subdivision: maximal width, ties by smallest (y_lo, x_lo).
Rect select_widest(const Family& family);

/// Partition R into R0 and strips M n^-t x h_i with M n^-t <= h_i < 2M n^-t
/// and sum h_i = h(R). Requires w(R) >= 2M n^-t; on failure writes *why
/// ("har") and returns nullopt — the run's terminal error.
std::optional<SplitResult> split(const Rect& r, std::int64_t n_current, const Params& p,
                                 Violation* why);

/// The downward-induction loop: keeps the residual family, the placed
/// squares, and the per-step ledger, with every accounting invariant checked
/// as it goes. Sequential by contract (the running index is a strict data
/// dependency between strips).
class PackingState {
 public:
  explicit PackingState(const Params& p);

  const Params& params() const { return params_; }
  std::int64_t n_current() const { return n_current_; }
  const Family& family() const { return family_; }
  const std::vector<PlacedSquare>& placed() const { return placed_; }
  const std::vector<StepRecord>& ledger() const { return ledger_; }
  double initial_side() const { return initial_side_; }
  SeriesValue initial_tail() const { return tail0_; }
  double expected_area() const;  // tail-tracked residual target
  double placed_area() const { return placed_area_.value(); }
  double discarded_area() const { return discarded_; }
  Rect outer() const;

  /// One induction step. Returns false when the run should stop; the report
  /// carries the reason. A stop rule hit mid-step leaves the unpacked strips
  /// in the family, which remains a valid packing state.
  bool step(const StopRule& stop, RunReport& report);

  RunReport run(const StopRule& stop);

 private:
  void record_step(StepRecord rec, double wperim_before, double decomp_delta,
                   RunReport& report);

  Params params_;
  std::int64_t n_current_;
  Family family_;
  std::vector<PlacedSquare> placed_;
  std::vector<StepRecord> ledger_;
  SeriesValue tail0_;
  double initial_side_ = 0.0;
  KahanAccumulator placed_area_;   // sum of placed side^2
  KahanAccumulator spent_series_;  // sum of n^-2t over placed indices
  KahanAccumulator budget_sum_;    // sum of n^-(t+dt) over 1..n_current-1
  double discarded_ = 0.0;
};

}  // namespace sqpack
