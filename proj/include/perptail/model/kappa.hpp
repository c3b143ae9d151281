#pragma once

#include <variant>
#include <vector>

#include "perptail/model/tilted_law.hpp"

namespace perptail {

// Law of log A under P, given directly.
struct NormalLogA {
  double mu = 0.0;
  double sigma = 1.0;  // standard deviation
};
struct DiscreteLogA {
  std::vector<double> values;
  std::vector<double> probs;
};
struct DensityLogA {
  num::RealFn density;
  double lo = -num::kInf;
  double hi = num::kInf;
  std::vector<double> kinks;
};

using BaseFamily = std::variant<NormalLogA, DiscreteLogA, DensityLogA>;

// log E A^t; +inf when the moment diverges.
double log_moment(const BaseFamily& base, double t);

// Root of log E A^t = 0 inside (lo, hi).
double solve_kappa(const BaseFamily& base, double lo, double hi);

// F_kappa of a base family once kappa is known.
TiltedLaw tilt(const NormalLogA& base, double kappa);
TiltedLaw tilt(const DiscreteLogA& base, double kappa);

}  // namespace perptail
