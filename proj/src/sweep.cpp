#include "sqpack/sweep.hpp"

#include <cstdio>
#include <sstream>

#include "sqpack/engine.hpp"
#include "sqpack/svg.hpp"

namespace sqpack {

std::vector<SweepRow> run_sweep(std::span<const double> ts,
                                std::span<const std::int64_t> Ms,
                                std::span<const std::int64_t> n0s, std::int64_t budget) {
  const std::int64_t total =
      static_cast<std::int64_t>(ts.size() * Ms.size() * n0s.size());
  std::vector<SweepRow> rows(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t flat = 0; flat < total; ++flat) {
    const std::size_t it = static_cast<std::size_t>(flat) / (Ms.size() * n0s.size());
    const std::size_t im = static_cast<std::size_t>(flat) / n0s.size() % Ms.size();
    const std::size_t in = static_cast<std::size_t>(flat) % n0s.size();
    SweepRow& row = rows[static_cast<std::size_t>(flat)];
    row.t = ts[it];
    row.M = Ms[im];
    row.n0 = n0s[in];
    try {
      PackingState state(Params::make(row.t, row.M, row.n0));
      const RunReport rep = state.run(StopRule{budget});
      row.squares_placed = rep.squares_placed;
      row.failure_mode = rep.status == RunStatus::ok ? "none" : to_string(rep.status);
      row.max_budget_ratio = rep.max_budget_ratio;
      row.wall_ms = rep.wall_ms;
    } catch (const std::exception&) {
      row.failure_mode = "invalid_params";
    }
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream os;
  os << "t,M,n0,squares_placed,failure_mode,max_budget_ratio,wall_time_ms\n";
  for (const SweepRow& r : rows) {
    char ms[32];
    std::snprintf(ms, sizeof(ms), "%.3f", r.wall_ms);
    os << format_double(r.t) << ',' << r.M << ',' << r.n0 << ',' << r.squares_placed
       << ',' << r.failure_mode << ',' << format_double(r.max_budget_ratio) << ',' << ms
       << '\n';
  }
  return os.str();
}

std::vector<std::string> sweep_findings(std::span<const SweepRow> rows) {
  std::vector<std::string> findings;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const SweepRow& a = rows[i];
      const SweepRow& b = rows[j];
      if (a.t == b.t && a.M == b.M && b.n0 > a.n0 &&
          b.squares_placed < a.squares_placed) {
        std::ostringstream os;
        os << "finding: squares placed decreased with n0 at fixed (t=" << a.t
           << ", M=" << a.M << "): n0=" << a.n0 << " placed " << a.squares_placed
           << ", n0=" << b.n0 << " placed " << b.squares_placed;
        findings.push_back(os.str());
      }
    }
  }
  return findings;
}

}  // namespace sqpack
