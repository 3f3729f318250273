#include "critgabor/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "critgabor/higher.hpp"
#include "critgabor/io.hpp"

namespace critgabor {

using nlohmann::json;

ExpansionOptions RunConfig::expansion() const {
  ExpansionOptions o;
  o.zak_size = static_cast<std::size_t>(N);
  o.refine = refine;
  o.refine_factor = refine_factor;
  o.sharp_shift = {sharp_k, sharp_j, false};
  o.theta = theta();
  return o;
}

CertaintyOptions RunConfig::certainty() const {
  CertaintyOptions o;
  o.delta = delta;
  o.phase_spacing = certainty_spacing;
  o.order_m_cutoff = order_m_cutoff;
  o.r_min = r_min;
  o.expansion = expansion();
  o.expansion.sharp_shift = {};
  return o;
}

namespace {
bool is_integer(double v) { return std::abs(v - std::round(v)) < 1e-9 * std::max(1.0, std::abs(v)); }
}  // namespace

void validate(const RunConfig& c) {
  if (!(c.T > 0.0) || !std::isfinite(c.T)) throw ConfigError("T", "must be positive");
  if (!(c.h > 0.0) || !std::isfinite(c.h)) throw ConfigError("h", "must be positive");
  if (!is_integer(2.0 * c.T / c.h)) throw ConfigError("h", "2T/h must be an integer");
  if (c.N < 4 || c.N % 2 != 0) throw ConfigError("N", "must be even and at least 4 (midpoint grid avoids the sharp point)");
  const double s = 1.0 / (c.h * c.N);
  if (!is_integer(s) || s < 0.5) throw ConfigError("N", "1/(hN) must be a positive integer");
  if (2.0 * std::ceil(c.T) + 2.0 > c.N) throw ConfigError("N", "too small for the signal support 2T");
  if (!is_integer(1.0 / (2.0 * c.h)) || !is_integer(c.T / c.h - 0.5 / c.h))
    throw ConfigError("h", "grid must contain the half-integers");
  if (c.Q < 1) throw ConfigError("Q", "must be at least 1");
  if (!(c.phase_spacing > 0.0)) throw ConfigError("phase_spacing", "must be positive");
  if (!(c.box.p_min < c.box.p_max && c.box.theta_min < c.box.theta_max)) throw ConfigError("box", "is empty");
  if (std::abs(c.box.p_min) > c.T || std::abs(c.box.p_max) > c.T) throw ConfigError("box", "p range exceeds [-T, T]");
  if (c.cutoff < 0 || c.cutoff >= c.N / 2) throw ConfigError("cutoff", "must lie in [0, N/2)");
  if (!(c.delta >= 0.0)) throw ConfigError("delta", "must be nonnegative");
  if (c.m < 0 || c.m > kMaxOrder) throw ConfigError("m", "must lie in [0, 6]");
  if (!(c.r > 0.0)) throw ConfigError("r", "must be positive");
  if (!(c.r_min > 0.0)) throw ConfigError("r_min", "must be positive");
  if (c.refine_factor < 1) throw ConfigError("refine_factor", "must be at least 1");
  if (std::abs(c.sharp_k) + 4 > c.T || std::abs(c.sharp_j) > 8) throw ConfigError("sharp", "relocation too far");
  if (!(c.certainty_spacing > 0.0)) throw ConfigError("certainty_spacing", "must be positive");
  if (c.order_m_cutoff < 1 || c.order_m_cutoff >= c.N / 2) throw ConfigError("order_m_cutoff", "must lie in [1, N/2)");
}

json config_to_json(const RunConfig& c) {
  return {{"T", c.T},
          {"h", c.h},
          {"N", c.N},
          {"Q", c.Q},
          {"phase_spacing", c.phase_spacing},
          {"box", {c.box.p_min, c.box.p_max, c.box.theta_min, c.box.theta_max}},
          {"cutoff", c.cutoff},
          {"delta", c.delta},
          {"m", c.m},
          {"r", c.r},
          {"r_min", c.r_min},
          {"refine", c.refine},
          {"refine_factor", c.refine_factor},
          {"sharp", {c.sharp_k, c.sharp_j}},
          {"certainty_spacing", c.certainty_spacing},
          {"order_m_cutoff", c.order_m_cutoff},
          {"seed", c.seed},
          {"output", c.output},
          {"residual_output", c.residual_output}};
}

RunConfig config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("<root>", "configuration must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "T") c.T = v.get<double>();
      else if (key == "h") c.h = v.get<double>();
      else if (key == "N") c.N = v.get<int>();
      else if (key == "Q") c.Q = v.get<int>();
      else if (key == "phase_spacing") c.phase_spacing = v.get<double>();
      else if (key == "box") {
        if (v.size() != 4) throw ConfigError(key, "expects [p_min, p_max, theta_min, theta_max]");
        c.box = {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
      } else if (key == "cutoff" || key == "R") c.cutoff = v.get<int>();
      else if (key == "delta") c.delta = v.get<double>();
      else if (key == "m") c.m = v.get<int>();
      else if (key == "r") c.r = v.get<double>();
      else if (key == "r_min") c.r_min = v.get<double>();
      else if (key == "refine") c.refine = v.get<bool>();
      else if (key == "refine_factor") c.refine_factor = v.get<int>();
      else if (key == "sharp") {
        if (v.size() != 2) throw ConfigError(key, "expects [k, j]");
        c.sharp_k = v[0].get<int>();
        c.sharp_j = v[1].get<int>();
      } else if (key == "certainty_spacing") c.certainty_spacing = v.get<double>();
      else if (key == "order_m_cutoff") c.order_m_cutoff = v.get<int>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "output") c.output = v.get<std::string>();
      else if (key == "residual_output") c.residual_output = v.get<std::string>();
      else throw ConfigError(key, "unknown setting");
    } catch (const json::exception& e) {
      throw ConfigError(key, std::string("wrong type: ") + e.what());
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return config_from_json(j);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(assignment, "override must look like key=value");
  const std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  json v;
  try {
    v = json::parse(text);
  } catch (const json::exception&) {
    v = text;
  }
  cfg = config_from_json(json{{key, v}}, cfg);
}

std::string config_hash(const RunConfig& cfg) {
  // output paths do not change any result
  nlohmann::json j = config_to_json(cfg);
  j.erase("output");
  j.erase("residual_output");
  const std::string text = j.dump();
  std::uint64_t hsh = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    hsh ^= ch;
    hsh *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hsh));
  return buf;
}

}  // namespace critgabor
