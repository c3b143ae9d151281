#include "perptail/model/catalog.hpp"

#include <cmath>
#include <numbers>

#include "perptail/common/error.hpp"
#include "perptail/model/kappa.hpp"

namespace perptail {

namespace {

TiltedLaw mixture(double lambda, const RightPart& right, double theta) {
  const double q = tune_weight(lambda, right, 1.0, theta);
  return base_from_tilted(TailSpec(right, ReflectedExpLeft{lambda, q}), 1.0);
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"case_i_pareto07",   "case_i_lomax07",      "case_ii_pareto15", "case_ii_lognormal",
          "case_ii_weibull05", "classical_lognormal", "degenerate",       "two_point_lattice"};
}

std::vector<std::string> heavy_catalog_names() {
  return {"case_i_pareto07", "case_i_lomax07", "case_ii_pareto15", "case_ii_lognormal", "case_ii_weibull05"};
}

CatalogModel catalog(const std::string& name) {
  if (name == "case_i_pareto07") return {name, mixture(2.0, ParetoRight{0.7, 1.0, 0.0}, 1.0), BLaw{BConstant{1.0}, 2.0}};
  if (name == "case_i_lomax07") return {name, mixture(2.0, ParetoRight{0.7, 1.0, 1.0}, 1.0), BLaw{BConstant{1.0}, 2.0}};
  if (name == "case_ii_pareto15")
    return {name, mixture(2.3, ParetoRight{1.5, 1.0, 0.0}, 0.6), BLaw{BUniform{-0.5, 1.5}, 2.0}};
  if (name == "case_ii_lognormal")
    return {name, mixture(2.0, LognormalRight{0.0, 1.0}, 0.6), BLaw{BUniform{-0.5, 1.5}, 2.0}};
  if (name == "case_ii_weibull05")
    return {name, mixture(2.0, WeibullRight{0.5}, 0.6), BLaw{BUniform{-0.5, 1.5}, 2.0}};
  if (name == "classical_lognormal")
    return {name, tilt(NormalLogA{-1.0, std::numbers::sqrt2}, 1.0), BLaw{BExponential{1.0}, 2.0}};
  if (name == "degenerate") return {name, tilt(NormalLogA{-1.0, std::numbers::sqrt2}, 1.0), BLaw{BAffineInA{3.0}, 2.0}};
  if (name == "two_point_lattice")
    return {name, tilt(DiscreteLogA{{1.0, -1.0}, {0.2, 0.8}}, std::log(4.0)), BLaw{BConstant{1.0}, 2.0}};
  fail(ErrorCode::ConfigInvalid, "unknown catalog model '" + name + "'");
}

}  // namespace perptail
