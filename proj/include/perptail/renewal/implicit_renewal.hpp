#pragma once

#include <cstdint>
#include <vector>

#include "perptail/renewal/key_renewal.hpp"
#include "perptail/sampler/sampler.hpp"

namespace perptail {

struct ImplicitConfig {
  double h = 0.01;
  double s_min = -8.0;
  double s_max = 15.0;
  // Seed of the fresh A draws paired with the X sample.
  std::uint64_t seed = 11;
  // Cells of the direct f with fewer exceedances are not compared.
  std::size_t min_exceedances = 200;
  // Fixed-point iteration for theta < 1.
  std::size_t max_iterations = 2000;
  double iteration_tol = 1e-12;
  Exec exec = Exec::Parallel;
};

struct ImplicitRow {
  double s;
  double f_direct;
  double f_iterated;
  double normalized_direct;
  double normalized_iterated;
  std::size_t exceedances;
};

struct ImplicitReport {
  // psi(s) = e^{kappa s} (P{X > e^s} - P{AX > e^s}), noisy cells zeroed.
  GridFn psi;
  GridFn psi_hat;
  double int_psi = 0.0;
  double int_psi_hat = 0.0;
  std::size_t zeroed_cells = 0;
  // h * sum of CI half-widths over zeroed cells.
  double zeroed_bias_bound = 0.0;
  // Share of zeroed cells among cells with at least min_exceedances X
  // exceedances; above 0.5 the check refuses to run.
  double noisy_fraction = 0.0;
  // Solution of f = psi + theta F_kappa * f and e^{kappa s} P{X > e^s}.
  GridFn f_iterated;
  GridFn f_direct;
  std::size_t iterations = 0;
  // max |f_iterated / f_direct - 1| over the reliable comparison range.
  double max_rel_gap = 0.0;
  // Limit of the normalized f: C_alpha int psi (m normalizer) or
  // theta int psi / (1-theta)^2 (g normalizer); int psi / E_kappa log A
  // unnormalized in the classical case; psi itself for A = 0.
  Normalizer normalizer = Normalizer::None;
  double limit = 0.0;
  std::vector<ImplicitRow> rows;
};

ImplicitReport implicit_renewal_crosscheck(const ALaw& a, double kappa, const PerpetuitySample& x,
                                           const ImplicitConfig& cfg);

}  // namespace perptail
