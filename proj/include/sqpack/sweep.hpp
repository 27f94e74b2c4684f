#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sqpack {

struct SweepRow {
  double t = 0.0;
  std::int64_t M = 0;
  std::int64_t n0 = 0;
  std::int64_t squares_placed = 0;
  std::string failure_mode = "none";  // none | width_too_small | block_precondition | ...
  double max_budget_ratio = 0.0;
  double wall_ms = 0.0;
};

/// One engine run per grid point (t-major, then M, then n0), each to the
/// square budget or to the algorithm's error branch. Points run in parallel;
/// the row order is the grid order regardless of completion order.
std::vector<SweepRow> run_sweep(std::span<const double> ts,
                                std::span<const std::int64_t> Ms,
                                std::span<const std::int64_t> n0s, std::int64_t budget);

/// CSV with header: t,M,n0,squares_placed,failure_mode,max_budget_ratio,wall_time_ms
std::string sweep_csv(std::span<const SweepRow> rows);

/// Empirical-trend findings (not failures): at fixed (t, M), growing n0
/// should not decrease squares placed before error.
std::vector<std::string> sweep_findings(std::span<const SweepRow> rows);

}  // namespace sqpack
