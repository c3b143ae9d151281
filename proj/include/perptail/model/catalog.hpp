#pragma once

#include <string>
#include <vector>

#include "perptail/model/blaw.hpp"
#include "perptail/model/tilted_law.hpp"

namespace perptail {

struct CatalogModel {
  std::string name;
  TiltedLaw law;
  BLaw b;
};

// Named reference models:
//   case_i_pareto07     theta = 1, Pareto(0.7) tail x^-0.7 beyond 1, ReflectedExp(2) left
//   case_i_lomax07      theta = 1, tail (1+x)^-0.7, ReflectedExp(2) left
//   case_ii_pareto15    theta = 0.6, tail x^-1.5 beyond 1, ReflectedExp(2.3) left, B ~ U(-0.5, 1.5)
//   case_ii_lognormal   theta = 0.6, lognormal(0,1) right, ReflectedExp(2) left
//   case_ii_weibull05   theta = 0.6, Weibull(0.5) right, ReflectedExp(2) left
//   classical_lognormal log A ~ N(-1, 2) so kappa = 1, finite tilted log moment
//   degenerate          log A ~ N(-1, 2), B = 3 (1 - A), X = 3 a.s.
//   two_point_lattice   log A = +1 w.p. 0.2, -1 w.p. 0.8, kappa = log 4
std::vector<std::string> catalog_names();
CatalogModel catalog(const std::string& name);

// The five heavy-tailed tilted models.
std::vector<std::string> heavy_catalog_names();

}  // namespace perptail
