#pragma once

#include <vector>

#include "perptail/diagnostics/sweep.hpp"
#include "perptail/model/tilted_law.hpp"
#include "perptail/sampler/tail_estimate.hpp"

namespace perptail {

enum class SlowvaryMode { CaseI, CaseII, Classical };

std::string to_string(SlowvaryMode mode);

// Factor turning P{X > x} into the quantity with a finite positive limit:
// m(log x) x^kappa (case i), x^kappa / g(log x) (case ii), x^kappa (classical).
double tail_normalizer(const TiltedLaw& law, SlowvaryMode mode, double x);

struct SlowvaryConfig {
  // Thresholds with fewer exceedances are left out of the fit.
  std::size_t min_exceedances = 200;
  // Verdict threshold on the fitted log-log slope.
  double slope_tol = 0.05;
};

struct SlowvaryFit {
  SweepReport report;
  // Normalized value at the largest reliable threshold, with its 95% band.
  double plateau = 0.0;
  double plateau_lower = 0.0;
  double plateau_upper = 0.0;
  double plateau_x = 0.0;
  std::size_t plateau_exceedances = 0;
};

// Plateau and log-log slope of already normalized values. `reliable` marks
// the points entering the fit; the plateau is the last reliable point (the
// first point when none is).
SlowvaryFit fit_plateau(const std::vector<double>& x, const std::vector<double>& normalized,
                        const std::vector<double>& lower, const std::vector<double>& upper,
                        const std::vector<bool>& reliable, double slope_tol);

// Fills est.normalized and fits. Needs at least 5 thresholds spanning 1.5
// decades.
SlowvaryFit slowvary_fit(TailEstimate& est, const TiltedLaw& law, SlowvaryMode mode, const SlowvaryConfig& cfg = {});

}  // namespace perptail
