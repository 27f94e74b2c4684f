#include "sqpack/certificate.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sqpack {

using nlohmann::json;

namespace {

json rect_to_json(const Rect& r) {
  return json{{"x0", r.x_lo}, {"y0", r.y_lo}, {"x1", r.x_hi}, {"y1", r.y_hi}};
}

Rect rect_from_json(const json& j) {
  return Rect{j.at("x0").get<double>(), j.at("y0").get<double>(),
              j.at("x1").get<double>(), j.at("y1").get<double>()};
}

json violation_to_json(const Violation& v) {
  return json{{"check", v.check}, {"lhs", v.lhs}, {"rhs", v.rhs},
              {"margin", v.lhs - v.rhs}, {"n", v.n}};
}

}  // namespace

json certificate_to_json(const PackingCertificate& cert) {
  json j;
  j["schema_version"] = 1;
  j["status"] = cert.status;
  j["params"] = json{{"t", cert.params.t}, {"M", cert.params.M}, {"n0", cert.params.n0}};
  if (cert.params.n_max)
    j["params"]["n_max"] = *cert.params.n_max;
  else
    j["params"]["n_max"] = nullptr;
  j["outer"] = rect_to_json(cert.outer);
  j["claimed_n_range"] = json{{"n_lo", cert.n_lo}, {"n_hi", cert.n_hi}};
  json squares = json::array();
  for (const PlacedSquare& q : cert.squares)
    squares.push_back(json{{"n", q.n}, {"x", q.x_lo}, {"y", q.y_lo}, {"side", q.side}});
  j["squares"] = std::move(squares);
  json residuals = json::array();
  for (const TaggedRect& t : cert.residuals) {
    json r = rect_to_json(t.rect);
    r["tag"] = to_string(t.kind);
    residuals.push_back(std::move(r));
  }
  j["residuals"] = std::move(residuals);
  j["discarded_area"] = cert.discarded_area;
  return j;
}

PackingCertificate certificate_from_json(const json& j) {
  PackingCertificate cert;
  const json& p = j.at("params");
  cert.params.t = p.at("t").get<double>();
  cert.params.M = p.at("M").get<std::int64_t>();
  cert.params.n0 = p.at("n0").get<std::int64_t>();
  if (p.contains("n_max") && !p.at("n_max").is_null())
    cert.params.n_max = p.at("n_max").get<std::int64_t>();
  cert.params.validate();
  cert.status = j.value("status", "ok");
  cert.outer = rect_from_json(j.at("outer"));
  cert.n_lo = j.at("claimed_n_range").at("n_lo").get<std::int64_t>();
  cert.n_hi = j.at("claimed_n_range").at("n_hi").get<std::int64_t>();
  for (const json& q : j.at("squares")) {
    cert.squares.push_back(PlacedSquare{q.at("n").get<std::int64_t>(),
                                        q.at("side").get<double>(),
                                        q.at("x").get<double>(), q.at("y").get<double>()});
  }
  for (const json& r : j.at("residuals")) {
    RectKind kind;
    const std::string tag = r.at("tag").get<std::string>();
    if (!rect_kind_from_string(tag.c_str(), kind))
      throw std::invalid_argument("certificate: unknown residual tag '" + tag + "'");
    cert.residuals.push_back(TaggedRect{rect_from_json(r), kind});
  }
  cert.discarded_area = j.value("discarded_area", 0.0);
  return cert;
}

PackingCertificate make_certificate(const PackingState& state, const RunReport& report) {
  PackingCertificate cert;
  cert.params = state.params();
  switch (report.status) {
    case RunStatus::ok: cert.status = "ok"; break;
    case RunStatus::invariant_violation: cert.status = "invariant-violation"; break;
    default: cert.status = "terminated-with-error"; break;
  }
  cert.outer = state.outer();
  cert.squares = state.placed();
  const Family& fam = state.family();
  cert.residuals.reserve(fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i)
    cert.residuals.push_back(TaggedRect{fam.at(i), fam.kind_at(i)});
  cert.n_lo = state.params().n0;
  cert.n_hi = state.n_current();
  cert.discarded_area = state.discarded_area();
  return cert;
}

PackingCertificate make_block_certificate(const Rect& rect, const BlockResult& res,
                                          const Params& params, std::int64_t n0) {
  PackingCertificate cert;
  cert.params = params;
  cert.outer = rect;
  cert.squares = res.squares;
  cert.residuals = res.gaps;
  cert.n_lo = n0;
  cert.n_hi = res.n0_next;
  cert.discarded_area = res.discarded_area;
  return cert;
}

json step_record_to_json(const StepRecord& rec) {
  return json{{"step", rec.step},
              {"n_start", rec.n_start},
              {"n_end", rec.n_end},
              {"strips", rec.strips},
              {"blocks_packed", rec.blocks_packed},
              {"placed_total", rec.placed_total},
              {"family_area", rec.family_area},
              {"expected_area", rec.expected_area},
              {"family_wperim", rec.family_wperim},
              {"budget", rec.budget},
              {"budget_ratio", rec.budget_ratio},
              {"max_height", rec.max_height},
              {"decomp_rel_err", rec.decomp_rel_err},
              {"max_nprime_ratio", rec.max_nprime_ratio},
              {"discarded_area_total", rec.discarded_area_total},
              {"init_derivation_bound", rec.init_derivation_bound}};
}

json run_report_to_json(const RunReport& report) {
  json j{{"status", to_string(report.status)},
         {"detail", report.detail},
         {"steps", report.steps},
         {"squares_placed", report.squares_placed},
         {"n_final", report.n_final},
         {"family_area", report.family_area},
         {"expected_tail", report.expected_tail},
         {"area_rel_gap", report.area_rel_gap},
         {"initial_height", report.initial_height},
         {"max_height_final", report.max_height_final},
         {"wperim_final", report.wperim_final},
         {"budget_final", report.budget_final},
         {"max_budget_ratio", report.max_budget_ratio},
         {"discarded_area", report.discarded_area},
         {"wall_time_ms", report.wall_ms}};
  if (report.failure) j["failure"] = violation_to_json(*report.failure);
  return j;
}

json state_to_certificate_json(const PackingState& state, const RunReport& report) {
  json j = certificate_to_json(make_certificate(state, report));
  if (report.failure) j["termination"] = violation_to_json(*report.failure);
  json ledger = json::array();
  for (const StepRecord& rec : state.ledger()) ledger.push_back(step_record_to_json(rec));
  j["ledger"] = std::move(ledger);
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(1, '\t') << '\n';
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace sqpack
