#include "perptail/diagnostics/slowvary.hpp"

#include <cmath>
#include <limits>

#include "perptail/common/error.hpp"
#include "perptail/renewal/key_renewal.hpp"

namespace perptail {

std::string to_string(SlowvaryMode mode) {
  switch (mode) {
    case SlowvaryMode::CaseI: return "case_i";
    case SlowvaryMode::CaseII: return "case_ii";
    case SlowvaryMode::Classical: return "classical";
  }
  return "classical";
}

double tail_normalizer(const TiltedLaw& law, SlowvaryMode mode, double x) {
  if (!(x > 0.0)) return 0.0;
  const double s = std::log(x);
  const double power = std::exp(law.kappa * s);
  switch (mode) {
    case SlowvaryMode::CaseI: return s > 0.0 ? law.fkappa.truncated_mean(s) * power : 0.0;
    case SlowvaryMode::CaseII: {
      const double g = local_window_g(law.fkappa, s);
      return g > 0.0 ? power / g : num::kInf;
    }
    case SlowvaryMode::Classical: return power;
  }
  return power;
}

SlowvaryFit fit_plateau(const std::vector<double>& x, const std::vector<double>& normalized,
                        const std::vector<double>& lower, const std::vector<double>& upper,
                        const std::vector<bool>& reliable, double slope_tol) {
  SlowvaryFit out;
  auto& rep = out.report;
  rep.check = "slowvary";
  std::vector<double> lx, lv, used;
  std::size_t top = 0;
  bool any = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    rep.rows.push_back({"normalized", x[i], std::numeric_limits<double>::quiet_NaN(), normalized[i], lower[i], upper[i]});
    if (!reliable[i]) continue;
    top = i;
    any = true;
    if (normalized[i] > 0.0 && std::isfinite(normalized[i])) {
      lx.push_back(std::log(x[i]));
      lv.push_back(std::log(normalized[i]));
      used.push_back(x[i]);
    }
  }
  if (!x.empty()) {
    out.plateau = normalized[top];
    out.plateau_lower = lower[top];
    out.plateau_upper = upper[top];
    out.plateau_x = x[top];
  }
  rep.last_value = out.plateau;
  rep.slope = lx.size() >= 2 ? num::ols(lx, lv).slope : std::numeric_limits<double>::quiet_NaN();
  if (!any || lx.size() < 2) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "fewer than two reliable positive points";
  } else if (!spans_two_decades(used)) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "reliable range spans less than two decades";
  } else {
    rep.verdict = std::abs(rep.slope) < slope_tol ? Verdict::Consistent : Verdict::Inconsistent;
  }
  return out;
}

SlowvaryFit slowvary_fit(TailEstimate& est, const TiltedLaw& law, SlowvaryMode mode, const SlowvaryConfig& cfg) {
  const auto& xs = est.thresholds;
  if (xs.size() < 5 || !(xs.front() > 0.0) || xs.back() < std::pow(10.0, 1.5) * xs.front() * (1.0 - 1e-12))
    fail(ErrorCode::InsufficientRange, "need at least 5 thresholds spanning 1.5 decades");
  est.normalized.assign(xs.size(), 0.0);
  std::vector<double> lower(xs.size()), upper(xs.size());
  std::vector<bool> reliable(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c = tail_normalizer(law, mode, xs[i]);
    est.normalized[i] = c * est.survival[i];
    lower[i] = c * est.ci_lower[i];
    upper[i] = c * est.ci_upper[i];
    reliable[i] = est.exceedances[i] >= cfg.min_exceedances;
  }
  auto fit = fit_plateau(xs, est.normalized, lower, upper, reliable, cfg.slope_tol);
  fit.report.check = "slowvary-" + to_string(mode);
  std::size_t top = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (reliable[i]) top = i;
  fit.plateau_exceedances = est.exceedances[top];
  return fit;
}

}  // namespace perptail
