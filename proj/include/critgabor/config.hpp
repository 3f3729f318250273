#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "critgabor/certainty.hpp"
#include "critgabor/expansion.hpp"
#include "critgabor/phaseplane.hpp"

namespace critgabor {

// Rejected configuration; the message names the offending field.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error("config field '" + field + "': " + what), field_name(field) {}
  std::string field_name;
};

struct RunConfig {
  double T = 8.0;
  double h = 1.0 / 64;
  int N = 64;
  int Q = 8;
  double phase_spacing = 1.0 / 16;
  BoundingBox box{-8.0, 8.0, -8.0, 8.0};
  int cutoff = 6;
  double delta = 2.0;
  int m = 0;
  double r = 4.0;
  double r_min = 3.0;
  bool refine = true;
  int refine_factor = 8;
  int sharp_k = 0;  // sharp point relocation (1/2 + k, 1/2 + j)
  int sharp_j = 0;
  double certainty_spacing = 1.0 / 8;
  int order_m_cutoff = 8;
  std::uint64_t seed = 7;
  std::string output;
  std::string residual_output;

  Grid grid() const { return Grid(T, h); }
  ThetaConfig theta() const { return ThetaConfig{Q}; }
  ExpansionOptions expansion() const;
  CertaintyOptions certainty() const;
};

// Throws ConfigError on the first violated constraint.
void validate(const RunConfig& cfg);

nlohmann::json config_to_json(const RunConfig& cfg);
// Starts from `base` and applies every key of j; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::string& path);
// "key=value" with a JSON value (bare words are read as strings).
void apply_override(RunConfig& cfg, const std::string& assignment);

// FNV-1a over the canonical JSON text, output paths left out.
std::string config_hash(const RunConfig& cfg);

}  // namespace critgabor
