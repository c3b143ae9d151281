#include "perptail/diagnostics/subexp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "perptail/common/error.hpp"

namespace perptail {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// (H*H)(x, x+T] = int H(x - y, x - y + T] H(dy).
double self_convolution_window(const TailSpec& spec, double x, double T) {
  std::vector<double> anchors = {x, x + T, 0.5 * x};
  for (double k : spec.kinks()) {
    anchors.push_back(x - k);
    anchors.push_back(x + T - k);
  }
  for (const auto& a : spec.atoms()) {
    anchors.push_back(x - a.x);
    anchors.push_back(x + T - a.x);
  }
  return spec.expect([&](double y) { return spec.window_mass(x - y, T); }, -num::kInf, num::kInf, anchors);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

SweepReport delta_subexp_check(const TailSpec& spec, double T, const std::vector<double>& x_ladder,
                               const SubexpConfig& cfg) {
  if (!(T > 0.0)) fail(ErrorCode::ParamViolation, "window width must be positive");
  SweepReport rep;
  rep.check = "delta-subexp";
  std::vector<double> dev;
  bool degenerate = false;
  for (double x : x_ladder) {
    if (T < 1e-9 * std::abs(x)) fail(ErrorCode::GridTooCoarse, "window too narrow to resolve at this x");
    const double base = spec.window_mass(x, T);
    double r1 = kNan;
    double d = num::kInf;
    if (finite_positive(base)) {
      r1 = self_convolution_window(spec, x, T) / (2.0 * base);
      d = std::abs(r1 - 1.0);
    } else {
      degenerate = true;
    }
    rep.rows.push_back({"r1", x, kNan, r1, kNan, kNan});
    double sup = 0.0;
    for (double t : kShiftProbes) {
      const double r2 = finite_positive(base) ? spec.window_mass(x + t, T) / base : kNan;
      rep.rows.push_back({"r2", x, t, r2, kNan, kNan});
      sup = std::isfinite(r2) ? std::max(sup, std::abs(r2 - 1.0)) : num::kInf;
    }
    dev.push_back(std::isfinite(d) ? std::max(d, sup) : num::kInf);
  }
  if (dev.empty()) {
    rep.note = "empty ladder";
    return rep;
  }
  rep.last_value = dev.back();
  std::vector<double> lx, ld;
  for (std::size_t i = 0; i < dev.size(); ++i)
    if (finite_positive(dev[i])) {
      lx.push_back(std::log(x_ladder[i]));
      ld.push_back(std::log(dev[i]));
    }
  rep.slope = lx.size() >= 2 ? num::ols(lx, ld).slope : kNan;
  if (!spans_two_decades(x_ladder)) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "x-ladder spans less than two decades";
  } else if (!degenerate && dev.back() < cfg.tol && dev.back() <= dev.front() + 1e-12) {
    rep.verdict = Verdict::Consistent;
  } else {
    rep.verdict = Verdict::Inconsistent;
    if (degenerate) rep.note = "window mass vanishes (or underflows) on the ladder";
  }
  return rep;
}

SweepReport growth_check(const WindowFn& window, double T, const std::vector<double>& x_ladder,
                         const GrowthConfig& cfg) {
  if (!(T > 0.0)) fail(ErrorCode::ParamViolation, "window width must be positive");
  SweepReport rep;
  rep.check = "growth";
  double worst = 0.0;
  for (double x : x_ladder) {
    const double base = window(x, T);
    double sup = 0.0;
    auto probe = [&](double y) {
      const double r = window(y, T) / base;
      sup = std::isnan(r) ? num::kInf : std::max(sup, r);
    };
    const double span = std::max(cfg.near_windows * T, std::abs(x));
    const auto fine = static_cast<std::int64_t>(std::ceil(8.0 * span / T));
    for (std::int64_t j = 1; j <= fine; ++j) probe(x + static_cast<double>(j) * T / 8.0);
    for (double step = span; step <= cfg.far_factor * std::max(x, T); step *= 2.0) probe(x + step);
    if (!(base > 0.0)) sup = num::kInf;
    rep.rows.push_back({"sup_ratio", x, T, sup, kNan, kNan});
    worst = std::max(worst, sup);
  }
  if (rep.rows.empty()) {
    rep.note = "empty ladder";
    return rep;
  }
  rep.last_value = rep.rows.back().value;
  std::vector<double> lx, lv;
  for (const auto& r : rep.rows)
    if (finite_positive(r.value)) {
      lx.push_back(std::log(r.x));
      lv.push_back(std::log(r.value));
    }
  rep.slope = lx.size() >= 2 ? num::ols(lx, lv).slope : kNan;
  if (!spans_two_decades(x_ladder)) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "x-ladder spans less than two decades";
  } else {
    rep.verdict = worst <= cfg.bound ? Verdict::Consistent : Verdict::Inconsistent;
  }
  return rep;
}

SweepReport growth_check(const TailSpec& spec, double T, const std::vector<double>& x_ladder,
                         const GrowthConfig& cfg) {
  return growth_check([&spec](double x, double w) { return spec.window_mass(x, w); }, T, x_ladder, cfg);
}

}  // namespace perptail
