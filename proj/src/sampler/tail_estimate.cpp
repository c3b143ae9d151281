#include "perptail/sampler/tail_estimate.hpp"

#include <algorithm>
#include <cmath>

#include "perptail/common/error.hpp"
#include "perptail/common/numerics.hpp"

namespace perptail {

TailEstimate tail_estimate(const std::vector<double>& samples, const std::vector<double>& thresholds) {
  if (samples.empty()) fail(ErrorCode::EmptySample, "no samples");
  if (!std::is_sorted(thresholds.begin(), thresholds.end()))
    fail(ErrorCode::InvalidModel, "thresholds must be ascending");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  TailEstimate est;
  est.n = sorted.size();
  est.thresholds = thresholds;
  for (double t : thresholds) {
    const auto above = static_cast<std::size_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
    const auto ci = num::wilson(above, est.n);
    est.exceedances.push_back(above);
    est.survival.push_back(static_cast<double>(above) / static_cast<double>(est.n));
    est.ci_lower.push_back(ci.lower);
    est.ci_upper.push_back(ci.upper);
    est.ci_halfwidth.push_back(ci.half_width());
  }
  return est;
}

std::vector<double> geometric_ladder(double lo, double hi, int per_decade) {
  std::vector<double> out;
  const double step = 1.0 / per_decade;
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  const int n = static_cast<int>(std::floor((b - a) / step + 1e-9));
  for (int i = 0; i <= n; ++i) out.push_back(std::pow(10.0, a + i * step));
  return out;
}

}  // namespace perptail
