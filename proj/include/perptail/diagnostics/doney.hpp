#pragma once

#include <vector>

#include "perptail/diagnostics/sweep.hpp"
#include "perptail/model/tail_spec.hpp"

namespace perptail {

// x Hbar(x) int_1^{delta x} h(x - y) / (y Hbar(y)^2) dy for the law H of
// `spec`. Zero when delta x <= 1. Needs 0 < delta < 1/2 and x > 2.
double doney_functional(const TailSpec& spec, double x, double delta);

inline const std::vector<double> kDoneyDeltas = {0.1, 0.05, 0.025, 0.0125};
inline const std::vector<double> kDoneyXs = {1e2, 1e3, 1e4, 1e5};

// Functional on the x-ladder times delta-ladder. `slope` is the fitted
// exponent of delta at the largest x; consistent when the values there
// shrink with delta (exponent above 0.1) and do not grow along x at the
// smallest delta by more than 10%.
SweepReport doney_sweep(const TailSpec& spec, const std::vector<double>& x_ladder = kDoneyXs,
                        const std::vector<double>& delta_ladder = kDoneyDeltas);

}  // namespace perptail
