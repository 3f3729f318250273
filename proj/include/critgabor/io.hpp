#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "critgabor/certainty.hpp"
#include "critgabor/expansion.hpp"
#include "critgabor/gabor.hpp"
#include "critgabor/higher.hpp"
#include "critgabor/numerics.hpp"
#include "critgabor/phaseplane.hpp"
#include "critgabor/zak.hpp"

namespace critgabor {

// Malformed or unreadable input (maps to exit status 2 in the CLI).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest text that reads back to the same double.
std::string format_double(double v);

void write_signal_csv(const SampledSignal& f, std::ostream& os);
SampledSignal read_signal_csv(std::istream& is);

nlohmann::json signal_to_json(const SampledSignal& f);
SampledSignal signal_from_json(const nlohmann::json& j);

// .json or anything else as CSV
SampledSignal read_signal_file(const std::string& path);
void write_signal_file(const SampledSignal& f, const std::string& path);

nlohmann::json coefficients_to_json(const CoefficientSet& c);
// Accepts a bare list of {k, j, sharp, re, im} or an object with a "coefficients" list.
CoefficientSet coefficients_from_json(const nlohmann::json& j);

nlohmann::json expansion_to_json(const RelaxedExpansion& e);
nlohmann::json expansion_to_json(const OrderMExpansion& e);
// Sharp block and nodes of an order-m file, if present.
bool order_m_from_json(const nlohmann::json& j, OrderMExpansion& out);

void write_gabor_csv(const GaborField& v, std::ostream& os);
void write_zak_csv(const ZakField& z, std::ostream& os);
nlohmann::json zak_to_json(const ZakField& z);
ZakField zak_from_json(const nlohmann::json& j);

// {"type": "disk", "center": [p, theta], "radius": r}
// {"type": "rect", "p": [lo, hi], "theta": [lo, hi]}
// {"type": "polygon", "vertices": [[p, theta], ...]}
// {"type": "union", "parts": [...]}
PhaseDomain domain_from_json(const nlohmann::json& j);

nlohmann::json decomposition_to_json(const CertaintyDecomposition& d);

}  // namespace critgabor
