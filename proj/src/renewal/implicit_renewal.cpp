#include "perptail/renewal/implicit_renewal.hpp"

#include <algorithm>
#include <cmath>

#include "perptail/common/error.hpp"
#include "perptail/renewal/smoothing.hpp"

namespace perptail {

namespace {

std::size_t count_above(const std::vector<double>& sorted, double t) {
  return static_cast<std::size_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
}

}  // namespace

ImplicitReport implicit_renewal_crosscheck(const ALaw& a, double kappa, const PerpetuitySample& xs,
                                           const ImplicitConfig& cfg) {
  if (xs.draws.empty()) fail(ErrorCode::EmptySample, "no X draws");
  if (!(cfg.s_min < 0.0 && cfg.s_max > 0.0)) fail(ErrorCode::InvalidModel, "grid must straddle s = 0");
  const TiltedLaw* law = std::get_if<TiltedLaw>(&a);
  const std::size_t n = xs.draws.size();

  std::vector<double> xsorted = xs.draws;
  std::sort(xsorted.begin(), xsorted.end());
  std::vector<double> ax(n, 0.0);
  if (law) {
    LogASampler s(*law);
    for_blocks(make_blocks(n, xs.config.stream_count), cfg.exec, [&](const Block& b) {
      Rng rng(cfg.seed, b.index, Salt::Psi);
      for (std::size_t i = b.begin; i < b.end; ++i) ax[i] = std::exp(s.draw_p(rng)) * xs.draws[i];
    });
    std::sort(ax.begin(), ax.end());
  }

  ImplicitReport rep;
  rep.psi = sample_pointwise([](double) { return 0.0; }, cfg.s_min, cfg.s_max, cfg.h);
  rep.f_direct = rep.psi;
  std::vector<std::size_t> exceed(rep.psi.size());
  const double nn = static_cast<double>(n);
  std::size_t informative = 0;
  std::size_t noisy = 0;
  for (std::size_t i = 0; i < rep.psi.size(); ++i) {
    const double s = rep.psi.x(i);
    const double level = std::exp(s);
    const double scale = std::exp(kappa * s);
    exceed[i] = count_above(xsorted, level);
    const double p1 = static_cast<double>(exceed[i]) / nn;
    const double p2 = law ? static_cast<double>(count_above(ax, level)) / nn : 0.0;
    const double value = scale * (p1 - p2);
    const double hw = scale * 1.96 * std::sqrt((p1 * (1.0 - p1) + p2 * (1.0 - p2)) / nn);
    rep.f_direct.values[i] = scale * p1;
    const bool reliable = exceed[i] >= cfg.min_exceedances;
    if (reliable) ++informative;
    if (std::abs(value) <= hw && hw > 0.0) {
      if (reliable) ++noisy;
      ++rep.zeroed_cells;
      rep.zeroed_bias_bound += cfg.h * hw;
      rep.psi.values[i] = 0.0;
    } else {
      rep.psi.values[i] = value;
    }
  }
  rep.noisy_fraction = informative ? static_cast<double>(noisy) / static_cast<double>(informative) : 0.0;
  if (rep.noisy_fraction > 0.5)
    fail(ErrorCode::MCNoiseTooLarge, "psi is within its CI of zero on " + std::to_string(rep.noisy_fraction * 100.0) +
                                         "% of cells; shrink the grid or add paths");
  rep.int_psi = rep.psi.total();
  rep.psi_hat = smooth_transform(rep.psi);
  rep.int_psi_hat = rep.psi_hat.total();

  if (!law) {
    rep.f_iterated = rep.psi;
  } else {
    const GridFn fk = build_grid_df(law->fkappa, cfg.s_min, cfg.s_max, cfg.h);
    if (law->critical()) {
      RenewalConfig rc;
      rc.theta = 1.0;
      rc.exec = cfg.exec;
      RenewalTable t = renewal_increments(fk, rc);
      rep.f_iterated = convolve(rep.psi, t.u, rep.psi.first, rep.psi.last(), cfg.exec);
      rep.iterations = t.n_terms;
    } else {
      GridFn f = rep.psi;
      double prev_step = num::kInf;
      std::size_t it = 0;
      for (; it < cfg.max_iterations; ++it) {
        GridFn next = convolve(f, fk, f.first, f.last(), cfg.exec);
        double step = 0.0;
        double size = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) {
          next.values[i] = rep.psi.values[i] + law->theta * next.values[i];
          step = std::max(step, std::abs(next.values[i] - f.values[i]));
          size = std::max(size, std::abs(next.values[i]));
        }
        f = std::move(next);
        if (step > prev_step * 1.0000001 && it > 5)
          fail(ErrorCode::FixedPointDiverged, "fixed-point increments stopped shrinking");
        prev_step = step;
        if (step <= cfg.iteration_tol * std::max(size, 1e-300)) break;
      }
      if (it == cfg.max_iterations) fail(ErrorCode::FixedPointDiverged, "fixed point not reached within max_iterations");
      rep.f_iterated = std::move(f);
      rep.iterations = it + 1;
    }
  }

  double c_alpha = 1.0;
  if (law) {
    switch (law->tag.kind) {
      case CaseKind::CaseI:
        rep.normalizer = Normalizer::MOfX;
        c_alpha = num::c_alpha(law->tag.alpha);
        rep.limit = c_alpha * rep.int_psi;
        break;
      case CaseKind::Classical:
        // Finite mean under P_kappa: f tends to int psi / E_kappa log A.
        rep.normalizer = Normalizer::None;
        rep.limit = rep.int_psi / law->fkappa.expect([](double y) { return y; });
        break;
      case CaseKind::CaseII:
        rep.normalizer = Normalizer::GWindow;
        rep.limit = law->theta * rep.int_psi / ((1.0 - law->theta) * (1.0 - law->theta));
        break;
      case CaseKind::Unclassified: break;
    }
  }
  auto normalize = [&](double s, double v) {
    if (!law) return v;
    switch (rep.normalizer) {
      case Normalizer::MOfX: return s > 0.0 ? law->fkappa.truncated_mean(s) * v : 0.0;
      case Normalizer::GWindow: {
        const double g = local_window_g(law->fkappa, s);
        return g > 0.0 ? v / g : 0.0;
      }
      case Normalizer::None: return v;
    }
    return v;
  };

  // Reliable range: enough exceedances, and far enough from the right edge
  // that the truncated grid does not bias the convolution.
  const double s_hi = cfg.s_max - 5.0;
  for (std::size_t i = 0; i < rep.psi.size(); ++i) {
    const double s = rep.psi.x(i);
    const std::int64_t k = rep.psi.first + static_cast<std::int64_t>(i);
    if (k % static_cast<std::int64_t>(std::llround(0.5 / cfg.h)) != 0) continue;
    ImplicitRow r{s,
                  rep.f_direct.values[i],
                  rep.f_iterated.at_index(k),
                  normalize(s, rep.f_direct.values[i]),
                  normalize(s, rep.f_iterated.at_index(k)),
                  exceed[i]};
    rep.rows.push_back(r);
    if (s >= 0.0 && s <= s_hi && exceed[i] >= cfg.min_exceedances && r.f_direct > 0.0)
      rep.max_rel_gap = std::max(rep.max_rel_gap, std::abs(r.f_iterated / r.f_direct - 1.0));
  }
  return rep;
}

}  // namespace perptail
