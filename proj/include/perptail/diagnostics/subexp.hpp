#pragma once

#include <functional>
#include <vector>

#include "perptail/diagnostics/sweep.hpp"
#include "perptail/model/tail_spec.hpp"

namespace perptail {

// F(x + w) - F(x) for a law on the line.
using WindowFn = std::function<double(double x, double w)>;

inline const std::vector<double> kSubexpXs = {1e2, 1e3, 1e4, 1e5};
inline const std::vector<double> kShiftProbes = {0.0, 0.25, 0.5, 0.75, 1.0};

struct SubexpConfig {
  // Verdict threshold on max(|r1 - 1|, sup_t |r2 - 1|) at the last x.
  double tol = 0.05;
};

// r1(x) = (H*H)(x, x+T] / (2 H(x, x+T]) and r2(x, t) = H(x+t, x+t+T] / H(x, x+T]
// along the ladder. Consistent when the deviation from 1 at the last x is
// below tol and does not exceed the deviation at the first x.
SweepReport delta_subexp_check(const TailSpec& spec, double T, const std::vector<double>& x_ladder = kSubexpXs,
                               const SubexpConfig& cfg = {});

struct GrowthConfig {
  double bound = 10.0;
  // y-grid: steps of T / 8 over (x, x + max(near_windows T, x)], then
  // doubling steps out to far_factor * x.
  int near_windows = 64;
  double far_factor = 100.0;
};

// sup over a y-grid beyond x of H(y, y+T] / H(x, x+T]; consistent when the
// ratio stays below cfg.bound along the ladder.
SweepReport growth_check(const WindowFn& window, double T, const std::vector<double>& x_ladder,
                         const GrowthConfig& cfg = {});
SweepReport growth_check(const TailSpec& spec, double T, const std::vector<double>& x_ladder = kSubexpXs,
                         const GrowthConfig& cfg = {});

}  // namespace perptail
