// Cross-checks the rolling engine's closed forms against the brute-force
// weighted-expectation oracle, window by window.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mbstat/rolling.hpp"

namespace mbstat::verify {

/// |closed - oracle| / max(|closed|, |oracle|, scale), where scale is the
/// magnitude of the closed form's numerator terms over its denominator. The
/// floor keeps windows whose true value is zero (constant prices, say)
/// from turning rounding noise into an O(1) relative error.
double relative_deviation(double closed, double oracle, double scale);

struct FamilyDeviation {
  std::string family;
  double max_deviation = 0.0;
  std::size_t worst_window = 0;
  double worst_t_center = 0.0;
  std::size_t windows = 0;
};

struct Summary {
  std::vector<FamilyDeviation> families;
  double tolerance = 0.0;
  bool passed() const noexcept;
};

/// Runs the engine over every window and compares each requested family
/// (price_vol / return_vol are the same-asset cases) with the oracle.
Summary run(const rolling::Engine& engine, double tolerance);

}  // namespace mbstat::verify
