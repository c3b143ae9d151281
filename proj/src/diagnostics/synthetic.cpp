#include "perptail/diagnostics/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "perptail/common/error.hpp"

namespace perptail {

CellMassLaw::CellMassLaw(std::size_t blocks) {
  // 4^-k stays a normal double up to k = 510.
  if (blocks == 0 || blocks > 500) fail(ErrorCode::ParamViolation, "block count must lie in [1, 500]");
  for (std::size_t k = 1; k <= blocks; ++k) {
    const double kk = static_cast<double>(k);
    cells_.push_back(std::exp2(-kk));
    light_starts_.push_back(cells_.size());
    for (std::size_t j = 0; j < k + 2; ++j) cells_.push_back(std::exp2(-2.0 * kk));
  }
  double z = 0.0;
  for (auto it = cells_.rbegin(); it != cells_.rend(); ++it) z += *it;
  for (double& c : cells_) c /= z;
}

double CellMassLaw::window(double x, double w) const {
  const double a = std::max(x, 0.0);
  const double b = std::min(x + w, support_end());
  if (!(b > a)) return 0.0;
  double s = 0.0;
  const auto first = static_cast<std::size_t>(std::floor(a));
  for (std::size_t i = first; i < cells_.size() && static_cast<double>(i) < b; ++i) {
    const double lo = std::max(a, static_cast<double>(i));
    const double hi = std::min(b, static_cast<double>(i + 1));
    if (hi > lo) s += cells_[i] * (hi - lo);
  }
  return s;
}

double CellMassLaw::light_start(double x) const {
  const auto cell = static_cast<std::size_t>(std::ceil(std::max(x, 0.0)));
  auto it = std::lower_bound(light_starts_.begin(), light_starts_.end(), cell);
  if (it == light_starts_.end()) --it;
  return static_cast<double>(*it);
}

double CellMassLaw::total_mass() const {
  double z = 0.0;
  for (auto it = cells_.rbegin(); it != cells_.rend(); ++it) z += *it;
  return z;
}

TailEstimate synthetic_estimate(const num::RealFn& sf, const std::vector<double>& thresholds, std::size_t n) {
  if (n == 0) fail(ErrorCode::EmptySample, "synthetic estimate needs n > 0");
  TailEstimate est;
  est.thresholds = thresholds;
  est.n = n;
  for (double t : thresholds) {
    const double p = std::clamp(sf(t), 0.0, 1.0);
    const auto k = static_cast<std::size_t>(std::llround(p * static_cast<double>(n)));
    const auto ci = num::wilson(k, n);
    const double hw = ci.half_width();
    est.survival.push_back(p);
    est.exceedances.push_back(k);
    est.ci_lower.push_back(std::max(0.0, p - hw));
    est.ci_upper.push_back(p + hw);
    est.ci_halfwidth.push_back(hw);
  }
  return est;
}

}  // namespace perptail
