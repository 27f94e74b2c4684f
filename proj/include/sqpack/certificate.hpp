#pragma once

#include <string>

#include <json.hpp>

#include "sqpack/engine.hpp"
#include "sqpack/verify.hpp"

namespace sqpack {

/// Certificate JSON, schema_version 1. Reals serialize as shortest
/// round-trip decimals, so parse(serialize(x)) == x bit-for-bit.
nlohmann::json certificate_to_json(const PackingCertificate& cert);

PackingCertificate certificate_from_json(const nlohmann::json& j);

/// Certificate for an engine state; attaches the per-step ledger and, when
/// the run ended on the algorithm's error branch, the failing inequality.
nlohmann::json state_to_certificate_json(const PackingState& state,
                                         const RunReport& report);

PackingCertificate make_certificate(const PackingState& state, const RunReport& report);

/// Certificate for a single packed block (the block-demo subcommand).
PackingCertificate make_block_certificate(const Rect& rect, const BlockResult& res,
                                          const Params& params, std::int64_t n0);

nlohmann::json run_report_to_json(const RunReport& report);
nlohmann::json step_record_to_json(const StepRecord& rec);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace sqpack
