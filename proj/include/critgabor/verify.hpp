#pragma once

#include <string>
#include <vector>

#include "critgabor/config.hpp"

namespace critgabor {

struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool upper = true;  // measured <= threshold passes; otherwise measured >= threshold
  bool pass() const { return upper ? measured <= threshold : measured >= threshold; }
};

struct VerifyReport {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  bool all_passed() const;
  std::string text() const;
};

// Invariant suite over every module at the given configuration.
VerifyReport run_verify(const RunConfig& cfg);

}  // namespace critgabor
