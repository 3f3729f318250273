#pragma once

#include <cmath>
#include <cstdint>

#include "critgabor/numerics.hpp"

namespace testing {

inline constexpr std::uint64_t kSeed = 7;

inline critgabor::Grid baseline() { return critgabor::Grid(8.0, 1.0 / 64); }

inline double max_abs_diff(const critgabor::SampledSignal& a, const critgabor::SampledSignal& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing
