#pragma once

#include <vector>

#include "perptail/common/csv.hpp"
#include "perptail/common/parallel.hpp"
#include "perptail/diagnostics/sweep.hpp"
#include "perptail/renewal/grid_fn.hpp"

namespace perptail {

// Triangular spikes of height n^-beta and half-width 1/2 centred at n^2,
// n = 1..n_max.
struct SpikeSpec {
  double beta = 1.1;
  int n_max = 30;
};

double spike_location(int n);
double spike_height(const SpikeSpec& spec, int n);

// z on the nodes of [0, x_max]. The step must divide 1/4 so that peaks and
// feet of every spike are nodes.
GridFn build_spiky_z(const SpikeSpec& spec, double h, double x_max);

// (1/2) sum_{n <= n_max} n^-beta.
double spiky_z_integral(const SpikeSpec& spec);

struct CounterexampleConfig {
  double alpha = 0.4;
  double beta = 1.1;
  int n_max = 30;
  double h = 0.05;
  double x_max = 950.0;
  // Anchor a: first node whose quarter window carries more than this U mass.
  double window_tol = 1e-3;
  // Control run with z replaced by min(z, clip / x).
  double clip = 1.0;
  Exec exec = Exec::Parallel;
};

struct CounterexampleRow {
  int n;
  double d_n;
  // m(a + d_n) (U*z)(a + d_n).
  double v_n;
  // m(a + d_n) (a_n / 2) [U(a + 1/4) - U(a - 1/4)].
  double lower_bound;
  // Midpoint a + n^2 + n + 1/2 between spikes n and n + 1.
  double off_spike_x;
  // m(x) (U*z)(x) at the midpoint.
  double off_spike_value;
  // off_spike_value / (C_alpha int_0^x z).
  double off_spike_ratio;
  // v_n for the clipped z.
  double clipped_v_n;
};

struct CounterexampleReport {
  CounterexampleConfig config;
  double a = 0.0;
  double u_window = 0.0;
  double c_alpha = 1.0;
  double int_z = 0.0;
  // Sum over unit cells of the largest z node in the cell.
  double dri_upper_sum = 0.0;
  std::vector<CounterexampleRow> rows;
  // Log-log slopes over n in [n_max / 3, n_max].
  int fit_from = 0;
  double slope_v = 0.0;
  double slope_lower = 0.0;
  double slope_clipped = 0.0;
  // 2 (1 - alpha) - beta.
  double predicted_slope = 0.0;
  bool lower_increasing = false;
  bool lower_bound_holds = false;
  double off_spike_min_ratio = 0.0;
  double off_spike_max_ratio = 0.0;
  // Doney diagnostic of the renewal law (evidence, not proof, of the SRT).
  SweepReport doney;
};

// Needs 0 < alpha < 1/2, beta > 1 and 2 alpha + beta < 2.
CounterexampleReport counterexample_run(const CounterexampleConfig& cfg);

// Columns: n, d_n, v_n, lower_bound, off_spike_value.
csv::Table to_table(const CounterexampleReport& report);

}  // namespace perptail
