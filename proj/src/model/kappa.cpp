#include "perptail/model/kappa.hpp"

#include <cmath>
#include <numeric>

#include "perptail/common/error.hpp"

namespace perptail {

namespace {

double log_moment_of(const NormalLogA& b, double t) { return t * b.mu + 0.5 * t * t * b.sigma * b.sigma; }

double log_moment_of(const DiscreteLogA& b, double t) {
  double top = -num::kInf;
  for (std::size_t i = 0; i < b.values.size(); ++i)
    if (b.probs[i] > 0.0) top = std::max(top, t * b.values[i]);
  double sum = 0.0;
  for (std::size_t i = 0; i < b.values.size(); ++i)
    if (b.probs[i] > 0.0) sum += b.probs[i] * std::exp(t * b.values[i] - top);
  return top + std::log(sum);
}

double log_moment_of(const DensityLogA& b, double t) {
  const double v = num::integrate_line([&](double y) { return std::exp(t * y) * b.density(y); }, b.lo, b.hi, b.kinks);
  if (std::isnan(v)) fail(ErrorCode::DivergedMoment, "quadrature for E A^t did not converge");
  return std::log(v);
}

void check(const DiscreteLogA& b) {
  if (b.values.empty() || b.values.size() != b.probs.size())
    fail(ErrorCode::InvalidModel, "discrete log A needs matching values and probabilities");
  const double total = std::accumulate(b.probs.begin(), b.probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) fail(ErrorCode::InvalidModel, "discrete probabilities must sum to 1");
}

}  // namespace

double log_moment(const BaseFamily& base, double t) {
  if (const auto* d = std::get_if<DiscreteLogA>(&base)) check(*d);
  return std::visit([t](const auto& b) { return log_moment_of(b, t); }, base);
}

double solve_kappa(const BaseFamily& base, double lo, double hi) {
  if (!(lo > 0.0 && hi > lo)) fail(ErrorCode::InvalidModel, "kappa bracket must satisfy 0 < lo < hi");
  auto f = [&](double t) { return log_moment(base, t); };
  const double flo = f(lo);
  const double fhi = f(hi);
  if (!std::isfinite(flo) || std::isnan(fhi)) fail(ErrorCode::DivergedMoment, "E A^t is not finite on the bracket");
  if (fhi < 0.0 && flo < 0.0) fail(ErrorCode::NoRoot, "E A^t < 1 on the whole bracket");
  if (flo > 0.0 && fhi > 0.0) fail(ErrorCode::NoRoot, "E A^t > 1 on the whole bracket");
  double top = hi;
  if (!std::isfinite(fhi)) {
    // Shrink towards lo until the moment is finite and positive in log.
    double a = lo;
    double b = hi;
    for (int i = 0; i < 200 && !(std::isfinite(f(top)) && f(top) > 0.0); ++i) {
      const double mid = 0.5 * (a + b);
      if (std::isfinite(f(mid))) {
        if (f(mid) > 0.0) {
          top = mid;
          break;
        }
        a = mid;
      } else {
        b = mid;
      }
      top = b;
    }
    if (!(std::isfinite(f(top)) && f(top) > 0.0)) fail(ErrorCode::NoRoot, "E A^t < 1 wherever it is finite");
  }
  auto root = num::find_root(f, lo, top, 1e-15);
  if (!root) fail(ErrorCode::NoRoot, "no sign change of log E A^t on the bracket");
  return *root;
}

TiltedLaw tilt(const NormalLogA& base, double kappa) {
  return base_from_tilted(TailSpec(NormalLaw{base.mu + kappa * base.sigma * base.sigma, base.sigma}), kappa);
}

TiltedLaw tilt(const DiscreteLogA& base, double kappa) {
  check(base);
  // At most one nonpositive atom and one positive atom are expressible.
  double theta = std::exp(log_moment(BaseFamily{base}, kappa));
  std::vector<Atom> tilted;
  for (std::size_t i = 0; i < base.values.size(); ++i)
    if (base.probs[i] > 0.0) tilted.push_back({base.values[i], base.probs[i] * std::exp(kappa * base.values[i]) / theta});
  if (tilted.size() == 1) return base_from_tilted(TailSpec(PointMassRight{tilted[0].x}), kappa);
  if (tilted.size() == 2) {
    const auto& lo = tilted[0].x < tilted[1].x ? tilted[0] : tilted[1];
    const auto& hi = tilted[0].x < tilted[1].x ? tilted[1] : tilted[0];
    if (lo.x <= 0.0 && hi.x >= 0.0) return base_from_tilted(TailSpec(PointMassRight{hi.x}, PointMassLeft{lo.x, lo.mass}), kappa);
  }
  fail(ErrorCode::InvalidModel, "discrete log A must have one atom, or one nonpositive and one nonnegative atom");
}

}  // namespace perptail
