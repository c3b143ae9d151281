#include "perptail/diagnostics/doney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "perptail/common/error.hpp"

namespace perptail {

double doney_functional(const TailSpec& spec, double x, double delta) {
  if (!(delta > 0.0 && delta < 0.5) || !(x > 2.0))
    fail(ErrorCode::ParamViolation, "doney functional needs 0 < delta < 1/2 and x > 2");
  const double top = delta * x;
  if (top <= 1.0) return 0.0;
  if (!spec.continuous_on(x - top, x - 1.0))
    fail(ErrorCode::NoDensity, "law has an atom inside (x - delta x, x - 1)");
  const double hx = spec.sf(x);
  if (!(hx > 0.0)) return 0.0;
  // y = e^t; smooth in t for power and stretched tails.
  auto f = [&](double t) {
    const double y = std::exp(t);
    const double s = spec.sf(y);
    return spec.density(x - y) / (s * s);
  };
  std::vector<double> anchors;
  for (double k : spec.kinks()) {
    if (k > 1.0 && k < top) anchors.push_back(std::log(k));
    if (x - k > 1.0 && x - k < top) anchors.push_back(std::log(x - k));
  }
  return x * hx * num::integrate_line(f, 0.0, std::log(top), anchors, 0.25);
}

SweepReport doney_sweep(const TailSpec& spec, const std::vector<double>& x_ladder,
                        const std::vector<double>& delta_ladder) {
  SweepReport rep;
  rep.check = "doney";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double x : x_ladder)
    for (double d : delta_ladder) rep.rows.push_back({"doney", x, d, doney_functional(spec, x, d), nan, nan});
  if (x_ladder.empty() || delta_ladder.empty()) {
    rep.note = "empty ladder";
    return rep;
  }
  const double x_top = *std::max_element(x_ladder.begin(), x_ladder.end());
  const double d_min = *std::min_element(delta_ladder.begin(), delta_ladder.end());
  std::vector<double> ld, lv;
  double at_dmin_top = nan, max_dmin_other = 0.0;
  for (const auto& r : rep.rows) {
    if (r.x == x_top && r.value > 0.0) {
      ld.push_back(std::log(r.param));
      lv.push_back(std::log(r.value));
    }
    if (r.param == d_min) {
      if (r.x == x_top) at_dmin_top = r.value;
      else max_dmin_other = std::max(max_dmin_other, r.value);
    }
  }
  rep.last_value = at_dmin_top;
  rep.slope = ld.size() >= 2 ? num::ols(ld, lv).slope : nan;
  if (!spans_two_decades(x_ladder)) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "x-ladder spans less than two decades";
  } else if (rep.slope > 0.1 && at_dmin_top <= 1.1 * max_dmin_other + 1e-300) {
    rep.verdict = Verdict::Consistent;
  } else if (rep.slope > 0.1 && max_dmin_other == 0.0) {
    rep.verdict = Verdict::Consistent;
  } else {
    rep.verdict = Verdict::Inconsistent;
  }
  return rep;
}

}  // namespace perptail
