#pragma once

#include <vector>

namespace perptail {

struct TailEstimate {
  std::vector<double> thresholds;
  std::vector<double> survival;
  std::vector<double> ci_lower;
  std::vector<double> ci_upper;
  std::vector<double> ci_halfwidth;
  std::vector<std::size_t> exceedances;
  std::size_t n = 0;
  // Survival times a theorem normalizer, filled by slowvary_fit.
  std::vector<double> normalized;
};

// Empirical P{X > t} with Wilson 95% intervals; thresholds must ascend.
TailEstimate tail_estimate(const std::vector<double>& samples, const std::vector<double>& thresholds);

// Geometric ladder from lo to hi with `per_decade` points per decade.
std::vector<double> geometric_ladder(double lo, double hi, int per_decade);

}  // namespace perptail
