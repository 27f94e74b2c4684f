// sqpack - pack, verify, sweep, render, block-demo
//
// Exit codes: 0 = success or clean algorithmic termination,
//             2 = invariant violation, 3 = I/O or parse error.

#include <cstdio>
#include <exception>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "sqpack/certificate.hpp"
#include "sqpack/cli_config.hpp"
#include "sqpack/engine.hpp"
#include "sqpack/series.hpp"
#include "sqpack/svg.hpp"
#include "sqpack/sweep.hpp"
#include "sqpack/verify.hpp"

namespace {

using namespace sqpack;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 2;
constexpr int kExitIo = 3;

void print_run_summary(const RunReport& r) {
  std::printf("status: %s%s%s\n", to_string(r.status),
              r.detail.empty() ? "" : " - ", r.detail.c_str());
  if (r.failure) std::printf("  %s\n", r.failure->to_message().c_str());
  std::printf("steps: %lld, squares placed: %lld, n: -> %lld\n",
              static_cast<long long>(r.steps), static_cast<long long>(r.squares_placed),
              static_cast<long long>(r.n_final));
  std::printf("family area %.12e vs tail target %.12e (rel gap %.3e)\n", r.family_area,
              r.expected_tail, r.area_rel_gap);
  std::printf("sup height %.6e (initial %.6e)\n", r.max_height_final, r.initial_height);
  std::printf("perim_delta %.6e vs budget %.6e (max ratio %.4f)\n", r.wperim_final,
              r.budget_final, r.max_budget_ratio);
  std::printf("discarded area %.3e, wall %.1f ms\n", r.discarded_area, r.wall_ms);
}

void print_verification(const VerificationReport& v) {
  std::printf("disjointness: %s", v.disjoint.pass ? "PASS" : "FAIL");
  if (!v.disjoint.pass) {
    const OverlapPair& p = v.disjoint.violations.front();
    std::printf(" (first pair %d,%d overlap area %.6e; %zu pair(s))", p.a, p.b, p.area,
                v.disjoint.violations.size());
  }
  std::printf("\ncontainment: %s (worst margin %.3e, item %d)\n",
              v.contain.pass ? "PASS" : "FAIL", v.contain.worst_margin,
              v.contain.worst_index);
  const AccountingReport& a = v.accounting;
  std::printf("tiling area identity: %s (rel gap %.3e)\n", a.tiling_pass ? "PASS" : "FAIL",
              a.tiling_rel_gap);
  if (a.tail_applicable) {
    std::printf("residual area vs zeta tail: %s (rel gap %.3e)\n",
                a.tail_pass ? "PASS" : "FAIL", a.residual_vs_tail_rel);
  } else {
    std::printf("residual area vs zeta tail: n/a (outer is not the canonical square)\n");
  }
  std::printf("height bound: %s (sup %.6e vs %.6e)\n", a.height_pass ? "PASS" : "FAIL",
              a.sup_height, a.height_bound);
  std::printf("index contiguity: %s%s%s\n", a.contiguity_pass ? "PASS" : "FAIL",
              a.contiguity_detail.empty() ? "" : " - ", a.contiguity_detail.c_str());
  std::printf("side consistency: %s (worst rel %.3e at n=%lld)\n",
              a.sides_pass ? "PASS" : "FAIL", a.worst_side_rel,
              static_cast<long long>(a.worst_side_n));
  std::printf("discarded ledger: %s\n", a.discarded_pass ? "PASS" : "FAIL");
  std::printf("perim_delta / budget ratio: %.4f (reported, not gated)\n", a.budget_ratio);
  if (!v.oracle_agrees) std::printf("sweep/bruteforce agreement: FAIL\n");
}

int cmd_pack(const CliConfig& cfg) {
  const Params p = Params::make(cfg.t, cfg.M, cfg.n0, cfg.n_max);
  PackingState state(p);
  const RunReport report = state.run(StopRule{cfg.budget});
  print_run_summary(report);

  nlohmann::json cert_json = state_to_certificate_json(state, report);
  cert_json["config"] = to_json(cfg);
  if (!cfg.out_path.empty()) {
    save_json_file(cfg.out_path, cert_json);
    std::printf("certificate written to %s\n", cfg.out_path.c_str());
  }
  if (!cfg.report_path.empty()) {
    nlohmann::json rj = run_report_to_json(report);
    rj["config"] = to_json(cfg);
    save_json_file(cfg.report_path, rj);
  }
  const PackingCertificate cert = make_certificate(state, report);
  if (!cfg.svg_path.empty()) save_svg_file(cfg.svg_path, cert);

  if (!report.clean_termination()) return kExitInvariant;
  if (cfg.self_verify) {
    const VerificationReport v = verify_certificate(cert);
    print_verification(v);
    if (!v.pass()) return kExitInvariant;
  }
  if (report.status != RunStatus::ok)
    std::printf("terminated-with-error: documented algorithm outcome, exit 0\n");
  return kExitOk;
}

int cmd_verify(const CliConfig& cfg) {
  const PackingCertificate cert = certificate_from_json(load_json_file(cfg.in_path));
  const VerifyLevel level = cfg.verify_level == "full-bruteforce"
                                ? VerifyLevel::full_bruteforce
                                : VerifyLevel::fast;
  const VerificationReport v = verify_certificate(cert, level);
  print_verification(v);
  return v.pass() ? kExitOk : kExitInvariant;
}

int cmd_sweep(const CliConfig& cfg) {
  const std::vector<SweepRow> rows =
      run_sweep(cfg.t_grid, cfg.m_grid, cfg.n0_grid, cfg.budget.value_or(1000));
  const std::string csv = sweep_csv(rows);
  if (cfg.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    std::ofstream out(cfg.out_path);
    if (!out) throw std::runtime_error("cannot open '" + cfg.out_path + "' for writing");
    out << csv;
    std::printf("sweep table written to %s (%zu rows)\n", cfg.out_path.c_str(),
                rows.size());
  }
  for (const std::string& f : sweep_findings(rows)) std::printf("%s\n", f.c_str());
  return kExitOk;
}

int cmd_render(const CliConfig& cfg) {
  const PackingCertificate cert = certificate_from_json(load_json_file(cfg.in_path));
  save_svg_file(cfg.out_path, cert);
  std::printf("svg written to %s (%zu squares, %zu residuals)\n", cfg.out_path.c_str(),
              cert.squares.size(), cert.residuals.size());
  return kExitOk;
}

int cmd_block_demo(const CliConfig& cfg) {
  if (cfg.m1 < 1 || cfg.m2 < cfg.m1) {
    std::fprintf(stderr, "block-demo: require 1 <= M1 <= M2 (got %lld, %lld)\n",
                 static_cast<long long>(cfg.m1), static_cast<long long>(cfg.m2));
    return kExitIo;
  }
  if (!(cfg.fill >= 0.0 && cfg.fill < 1.0)) {
    std::fprintf(stderr, "block-demo: require 0 <= fill < 1\n");
    return kExitIo;
  }
  const double s = inv_pow(cfg.n0, cfg.t);
  const Rect rect{0.0, 0.0, (static_cast<double>(cfg.m1) + cfg.fill) * s,
                  (static_cast<double>(cfg.m2) + cfg.fill) * s};
  const BlockSpec spec{rect, cfg.n0, cfg.t, cfg.m1, cfg.m2};
  BlockResult res;
  res.squares = place_squares(spec);
  res.gaps = enumerate_gaps(spec, res.squares, &res.discarded_area);
  res.n0_next = cfg.n0 + cfg.m1 * cfg.m2;
  res.M1 = cfg.m1;
  res.M2 = cfg.m2;

  std::size_t counts[4] = {0, 0, 0, 0};
  for (const TaggedRect& g : res.gaps) {
    switch (g.kind) {
      case RectKind::surround: ++counts[0]; break;
      case RectKind::left: ++counts[1]; break;
      case RectKind::top: ++counts[2]; break;
      case RectKind::corner: ++counts[3]; break;
      default: break;
    }
  }
  std::printf("block %lldx%lld: %zu squares, %zu gaps (%zu surround + %zu left + %zu "
              "top + %zu corner)\n",
              static_cast<long long>(cfg.m1), static_cast<long long>(cfg.m2),
              res.squares.size(), res.gaps.size(), counts[0], counts[1], counts[2],
              counts[3]);

  const Params p = Params::make(cfg.t, std::max<std::int64_t>(2, cfg.m1), cfg.n0);
  const PackingCertificate cert = make_block_certificate(rect, res, p, cfg.n0);
  if (!cfg.out_path.empty()) {
    nlohmann::json j = certificate_to_json(cert);
    j["config"] = to_json(cfg);
    save_json_file(cfg.out_path, j);
  }
  if (!cfg.svg_path.empty()) save_svg_file(cfg.svg_path, cert);

  const VerificationReport v = verify_certificate(cert);
  print_verification(v);
  return v.pass() ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"near-lattice perfect square packing: run, verify, sweep, render"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_params = [&cfg](CLI::App* cmd) {
    cmd->add_option("--t", cfg.t, "exponent t, 1/2 < t < 1");
    cmd->add_option("--m,--M", cfg.M, "block scale M (>= 2)");
    cmd->add_option("--n0", cfg.n0, "starting index (>= 2)");
  };

  CLI::App* pack = app.add_subcommand("pack", "run the packing engine");
  add_params(pack);
  pack->add_option("--budget", cfg.budget, "stop after placing this many squares");
  pack->add_option("--n-max", cfg.n_max, "stop before placing index n_max");
  pack->add_option("--out", cfg.out_path, "certificate JSON path");
  pack->add_option("--report", cfg.report_path, "run report JSON path");
  pack->add_option("--svg", cfg.svg_path, "SVG rendering path");
  pack->add_option("--precision", cfg.precision, "working precision (double)")
      ->check(CLI::IsMember({"double"}));
  pack->add_flag("!--no-self-verify", cfg.self_verify, "skip the post-run verifier");

  CLI::App* verify = app.add_subcommand("verify", "check a certificate independently");
  verify->add_option("certificate", cfg.in_path, "certificate JSON path")->required();
  verify->add_option("--level", cfg.verify_level, "fast | full-bruteforce")
      ->check(CLI::IsMember({"fast", "full-bruteforce"}));

  CLI::App* sweep = app.add_subcommand("sweep", "run a (t, M, n0) grid, emit CSV");
  sweep->add_option("--t", cfg.t_grid, "t values")->delimiter(',')->required();
  sweep->add_option("--m,--M", cfg.m_grid, "M values")->delimiter(',')->required();
  sweep->add_option("--n0", cfg.n0_grid, "n0 values")->delimiter(',')->required();
  sweep->add_option("--budget", cfg.budget, "square budget per grid point");
  sweep->add_option("--out", cfg.out_path, "CSV path (default stdout)");

  CLI::App* render = app.add_subcommand("render", "render a certificate to SVG");
  render->add_option("certificate", cfg.in_path, "certificate JSON path")->required();
  render->add_option("--out", cfg.out_path, "SVG path")->required();

  CLI::App* demo = app.add_subcommand("block-demo", "pack one synthetic block");
  add_params(demo);
  demo->add_option("--m1", cfg.m1, "columns M1");
  demo->add_option("--m2", cfg.m2, "rows M2 (>= M1)");
  demo->add_option("--fill", cfg.fill, "fractional slack of the target rect [0,1)");
  demo->add_option("--out", cfg.out_path, "certificate JSON path");
  demo->add_option("--svg", cfg.svg_path, "SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitIo;
  }

  try {
    if (pack->parsed()) {
      cfg.subcommand = "pack";
      return cmd_pack(cfg);
    }
    if (verify->parsed()) {
      cfg.subcommand = "verify";
      return cmd_verify(cfg);
    }
    if (sweep->parsed()) {
      cfg.subcommand = "sweep";
      return cmd_sweep(cfg);
    }
    if (render->parsed()) {
      cfg.subcommand = "render";
      return cmd_render(cfg);
    }
    if (demo->parsed()) {
      cfg.subcommand = "block-demo";
      return cmd_block_demo(cfg);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitIo;
}
