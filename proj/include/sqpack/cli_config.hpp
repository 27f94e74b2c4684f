#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sqpack {

/// Effective CLI configuration; round-trips through JSON so reports can
/// record exactly what ran.
struct CliConfig {
  std::string subcommand;
  double t = 0.75;
  std::int64_t M = 8;
  std::int64_t n0 = 1000000;
  std::optional<std::int64_t> n_max;
  std::optional<std::int64_t> budget;
  std::string precision = "double";
  std::string verify_level = "fast";
  std::string in_path;
  std::string out_path;
  std::string svg_path;
  std::string report_path;
  std::int64_t m1 = 3;
  std::int64_t m2 = 4;
  double fill = 0.5;
  bool self_verify = true;
  std::vector<double> t_grid;
  std::vector<std::int64_t> m_grid;
  std::vector<std::int64_t> n0_grid;

  bool operator==(const CliConfig&) const = default;
};

inline nlohmann::json to_json(const CliConfig& c) {
  nlohmann::json j{{"subcommand", c.subcommand},
                   {"t", c.t},
                   {"M", c.M},
                   {"n0", c.n0},
                   {"precision", c.precision},
                   {"verify_level", c.verify_level},
                   {"in_path", c.in_path},
                   {"out_path", c.out_path},
                   {"svg_path", c.svg_path},
                   {"report_path", c.report_path},
                   {"m1", c.m1},
                   {"m2", c.m2},
                   {"fill", c.fill},
                   {"self_verify", c.self_verify},
                   {"t_grid", c.t_grid},
                   {"m_grid", c.m_grid},
                   {"n0_grid", c.n0_grid}};
  j["n_max"] = c.n_max ? nlohmann::json(*c.n_max) : nlohmann::json(nullptr);
  j["budget"] = c.budget ? nlohmann::json(*c.budget) : nlohmann::json(nullptr);
  return j;
}

inline CliConfig cli_config_from_json(const nlohmann::json& j) {
  CliConfig c;
  c.subcommand = j.at("subcommand").get<std::string>();
  c.t = j.at("t").get<double>();
  c.M = j.at("M").get<std::int64_t>();
  c.n0 = j.at("n0").get<std::int64_t>();
  if (!j.at("n_max").is_null()) c.n_max = j.at("n_max").get<std::int64_t>();
  if (!j.at("budget").is_null()) c.budget = j.at("budget").get<std::int64_t>();
  c.precision = j.at("precision").get<std::string>();
  c.verify_level = j.at("verify_level").get<std::string>();
  c.in_path = j.at("in_path").get<std::string>();
  c.out_path = j.at("out_path").get<std::string>();
  c.svg_path = j.at("svg_path").get<std::string>();
  c.report_path = j.at("report_path").get<std::string>();
  c.m1 = j.at("m1").get<std::int64_t>();
  c.m2 = j.at("m2").get<std::int64_t>();
  c.fill = j.at("fill").get<double>();
  c.self_verify = j.at("self_verify").get<bool>();
  c.t_grid = j.at("t_grid").get<std::vector<double>>();
  c.m_grid = j.at("m_grid").get<std::vector<std::int64_t>>();
  c.n0_grid = j.at("n0_grid").get<std::vector<std::int64_t>>();
  return c;
}

}  // namespace sqpack
