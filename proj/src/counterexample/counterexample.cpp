#include "perptail/counterexample/counterexample.hpp"

#include <algorithm>
#include <cmath>

#include "perptail/common/error.hpp"
#include "perptail/diagnostics/doney.hpp"
#include "perptail/renewal/convolve.hpp"
#include "perptail/renewal/renewal_table.hpp"

namespace perptail {

namespace {

// Nodes per quarter unit; fails unless h divides 1/4.
std::int64_t quarter_steps(double h) {
  const double q = 0.25 / h;
  const double r = std::round(q);
  if (!(h > 0.0) || r < 1.0 || std::abs(q - r) > 1e-9 * r)
    fail(ErrorCode::GridTooCoarse, "grid step must divide 1/4");
  return static_cast<std::int64_t>(r);
}

double dot_at(const GridFn& u, const GridFn& z, std::int64_t k) {
  // (U*z)(x_k) = sum_j U_j z_{k - j}
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const std::int64_t idx = u.first + static_cast<std::int64_t>(j);
    s += u.values[j] * z.at_index(k - idx);
  }
  return s;
}

double log_slope(const std::vector<double>& n, const std::vector<double>& v) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < n.size(); ++i)
    if (v[i] > 0.0) {
      lx.push_back(std::log(n[i]));
      ly.push_back(std::log(v[i]));
    }
  return num::ols(lx, ly).slope;
}

}  // namespace

double spike_location(int n) { return static_cast<double>(n) * static_cast<double>(n); }

double spike_height(const SpikeSpec& spec, int n) { return std::pow(static_cast<double>(n), -spec.beta); }

GridFn build_spiky_z(const SpikeSpec& spec, double h, double x_max) {
  if (!(spec.beta > 1.0)) fail(ErrorCode::ParamViolation, "spike amplitudes need beta > 1");
  if (spec.n_max < 1) fail(ErrorCode::ParamViolation, "need at least one spike");
  const std::int64_t q = quarter_steps(h);
  const std::int64_t hi = node_index(x_max, h);
  GridFn z{h, 0, std::vector<double>(static_cast<std::size_t>(std::max<std::int64_t>(hi + 1, 1)), 0.0),
           GridKind::Pointwise, 0.0};
  for (int n = 1; n <= spec.n_max; ++n) {
    const std::int64_t centre = 4 * q * static_cast<std::int64_t>(n) * n;
    const double a = spike_height(spec, n);
    for (std::int64_t j = -2 * q; j <= 2 * q; ++j) {
      const std::int64_t k = centre + j;
      if (k < 0 || k > hi) continue;
      // Exact at the quarter points: 1 - |j| / (4q) * 2.
      z.values[static_cast<std::size_t>(k)] = a * (1.0 - static_cast<double>(std::abs(j)) / static_cast<double>(2 * q));
    }
  }
  return z;
}

double spiky_z_integral(const SpikeSpec& spec) {
  double s = 0.0;
  for (int n = 1; n <= spec.n_max; ++n) s += spike_height(spec, n);
  return 0.5 * s;
}

CounterexampleReport counterexample_run(const CounterexampleConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5)) fail(ErrorCode::ParamViolation, "alpha must lie in (0, 1/2)");
  if (!(cfg.beta > 1.0)) fail(ErrorCode::ParamViolation, "beta must exceed 1");
  if (!(2.0 * cfg.alpha + cfg.beta < 2.0)) fail(ErrorCode::ParamViolation, "need 2 alpha + beta < 2");
  if (cfg.n_max < 3) fail(ErrorCode::ParamViolation, "n_max must be at least 3");
  const SpikeSpec spike{cfg.beta, cfg.n_max};
  const double last_mid = spike_location(cfg.n_max) + cfg.n_max + 0.5;
  if (cfg.x_max < last_mid + 1.0) fail(ErrorCode::ParamViolation, "x_max must cover the last spike and midpoint");
  const std::int64_t q = quarter_steps(cfg.h);

  CounterexampleReport rep;
  rep.config = cfg;
  const TailSpec law(ParetoRight{cfg.alpha, 1.0, 0.0});
  rep.doney = doney_sweep(law);
  rep.c_alpha = num::c_alpha(cfg.alpha);

  const GridFn fk = build_grid_df(law, 0.0, cfg.x_max, cfg.h);
  RenewalConfig rc;
  rc.exec = cfg.exec;
  const RenewalTable table = renewal_increments(fk, rc);
  const GridFn& u = table.u;

  // Anchor a and the quarter window mass U(a + 1/4) - U(a - 1/4).
  std::int64_t a_idx = -1;
  for (std::int64_t k = 0; k <= u.last(); ++k) {
    double w = 0.0;
    for (std::int64_t j = k - q + 1; j <= k + q; ++j) w += u.at_index(j);
    if (w > cfg.window_tol) {
      a_idx = k;
      rep.u_window = w;
      break;
    }
  }
  if (a_idx < 0) fail(ErrorCode::InsufficientRange, "no node with enough renewal mass in its quarter window");
  rep.a = static_cast<double>(a_idx) * cfg.h;

  const GridFn z = build_spiky_z(spike, cfg.h, cfg.x_max);
  GridFn z_clip = z;
  for (std::size_t i = 0; i < z_clip.size(); ++i) {
    const double x = z_clip.x(i);
    if (x > 0.0) z_clip.values[i] = std::min(z_clip.values[i], cfg.clip / x);
  }
  rep.int_z = spiky_z_integral(spike);
  {
    const auto per_unit = static_cast<std::size_t>(4 * q);
    for (std::size_t c = 0; c < z.size(); c += per_unit) {
      double mx = 0.0;
      for (std::size_t i = c; i <= std::min(c + per_unit, z.size() - 1); ++i) mx = std::max(mx, z.values[i]);
      rep.dri_upper_sum += mx;
    }
  }

  // Off-spike values use the full convolution on the grid.
  const GridFn uz = convolve(z, u, 0, z.last(), cfg.exec);
  auto m = [&](double x) { return law.truncated_mean(x); };
  // Running int_0^x z by the trapezoid rule on the grid.
  std::vector<double> cum(z.size(), 0.0);
  for (std::size_t i = 1; i < z.size(); ++i) cum[i] = cum[i - 1] + 0.5 * cfg.h * (z.values[i - 1] + z.values[i]);

  rep.lower_bound_holds = true;
  rep.off_spike_min_ratio = num::kInf;
  rep.off_spike_max_ratio = 0.0;
  for (int n = 1; n <= cfg.n_max; ++n) {
    CounterexampleRow r;
    r.n = n;
    r.d_n = spike_location(n);
    const std::int64_t k = a_idx + 4 * q * static_cast<std::int64_t>(n) * n;
    const double x = static_cast<double>(k) * cfg.h;
    const double mx = m(x);
    r.v_n = mx * dot_at(u, z, k);
    r.lower_bound = mx * 0.5 * spike_height(spike, n) * rep.u_window;
    r.clipped_v_n = mx * dot_at(u, z_clip, k);
    const std::int64_t kmid = k + 4 * q * n + 2 * q;
    r.off_spike_x = static_cast<double>(kmid) * cfg.h;
    r.off_spike_value = m(r.off_spike_x) * uz.at_index(kmid);
    const double zint = cum[static_cast<std::size_t>(std::min<std::int64_t>(kmid, z.last()))];
    r.off_spike_ratio = r.off_spike_value / (rep.c_alpha * zint);
    if (!(r.v_n >= r.lower_bound)) rep.lower_bound_holds = false;
    rep.rows.push_back(r);
  }

  rep.fit_from = std::max(1, cfg.n_max / 3);
  std::vector<double> ns, vs, ls, cs;
  rep.lower_increasing = true;
  for (const auto& r : rep.rows) {
    if (r.n < rep.fit_from) continue;
    if (!ls.empty() && !(r.lower_bound > ls.back())) rep.lower_increasing = false;
    ns.push_back(r.n);
    vs.push_back(r.v_n);
    ls.push_back(r.lower_bound);
    cs.push_back(r.clipped_v_n);
    rep.off_spike_min_ratio = std::min(rep.off_spike_min_ratio, r.off_spike_ratio);
    rep.off_spike_max_ratio = std::max(rep.off_spike_max_ratio, r.off_spike_ratio);
  }
  rep.slope_v = log_slope(ns, vs);
  rep.slope_lower = log_slope(ns, ls);
  rep.slope_clipped = log_slope(ns, cs);
  rep.predicted_slope = 2.0 * (1.0 - cfg.alpha) - cfg.beta;
  return rep;
}

csv::Table to_table(const CounterexampleReport& report) {
  csv::Table t({"n", "d_n", "v_n", "lower_bound", "off_spike_value"});
  for (const auto& r : report.rows) t.add({static_cast<double>(r.n), r.d_n, r.v_n, r.lower_bound, r.off_spike_value});
  return t;
}

}  // namespace perptail
