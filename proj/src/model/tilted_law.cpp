#include "perptail/model/tilted_law.hpp"

#include <cmath>

#include "perptail/common/error.hpp"

namespace perptail {

std::string to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::CaseI: return "CaseI";
    case CaseKind::CaseII: return "CaseII";
    case CaseKind::Classical: return "ClassicalKGG";
    case CaseKind::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

double TiltedLaw::base_df(double x) const { return std::min(1.0, theta * fkappa.exp_integral(-kappa, -num::kInf, x)); }

double TiltedLaw::base_sf(double x) const {
  double v = fkappa.exp_integral(-kappa, x, num::kInf);
  for (const auto& a : fkappa.atoms())
    if (a.x == x) v -= a.mass * std::exp(-kappa * a.x);
  return std::max(0.0, theta * v);
}

double TiltedLaw::base_density(double x) const { return theta * std::exp(-kappa * x) * fkappa.density(x); }

std::vector<Atom> TiltedLaw::base_atoms() const {
  auto out = fkappa.atoms();
  for (auto& a : out) a.mass *= theta * std::exp(-kappa * a.x);
  return out;
}

double TiltedLaw::expect_base(const num::RealFn& phi, double lo, double hi) const {
  const double k = kappa;
  return theta * fkappa.expect([&](double y) { return phi(y) * std::exp(-k * y); }, lo, hi);
}

double TiltedLaw::base_quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) fail(ErrorCode::QuantileFailure, "quantile level must lie in (0,1)");
  double lo = -1.0;
  double hi = 1.0;
  int guard = 0;
  while (base_df(lo) > u && guard++ < 60) lo *= 2.0;
  guard = 0;
  while (base_df(hi) < u && guard++ < 60) hi *= 2.0;
  if (base_df(lo) > u || base_df(hi) < u) fail(ErrorCode::QuantileFailure, "could not bracket the base quantile");
  // Bisection: the df may jump at atoms, where a sign-change solver would stall.
  while (hi - lo > 1e-11 * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    (base_df(mid) >= u ? hi : lo) = mid;
  }
  return hi;
}

double TiltedLaw::retilted_df(double x) const {
  double v = 0.0;
  for (const auto& a : base_atoms())
    if (a.x <= x) v += std::exp(kappa * a.x) * a.mass;
  auto kinks = fkappa.kinks();
  const double k = kappa;
  v += num::integrate_line([&](double y) { return std::exp(k * y) * base_density(y); }, -num::kInf, x, kinks);
  return v / theta;
}

double TiltedLaw::mean_log_a() const {
  return expect_base([](double y) { return y; });
}

TiltedLaw base_from_tilted(const TailSpec& fkappa, double kappa) {
  if (!(kappa > 0.0)) fail(ErrorCode::InvalidModel, "kappa must be positive");
  const double integral = fkappa.exp_integral(-kappa);
  if (!std::isfinite(integral))
    fail(ErrorCode::InvalidTilt, "int e^{-kappa y} F_kappa(dy) diverges: left tail of F_kappa too heavy for kappa");
  if (integral < 1.0 - 1e-12)
    fail(ErrorCode::InvalidTilt, "int e^{-kappa y} F_kappa(dy) = " + std::to_string(integral) + " < 1 forces theta > 1");
  double theta = 1.0 / integral;
  if (std::abs(theta - 1.0) < 1e-10) theta = 1.0;

  CaseTag tag;
  const auto index = fkappa.rv_index();
  if (index && *index <= 1.0) {
    if (theta == 1.0) {
      tag.kind = CaseKind::CaseI;
      tag.alpha = *index;
      const auto& p = std::get<ParetoRight>(fkappa.right());
      tag.slowly_varying = "l(x) = " + std::to_string((1.0 - fkappa.left_weight()) * p.c) + " (1 + " +
                           std::to_string(p.x0) + "/x)^-" + std::to_string(p.alpha);
    } else {
      tag.kind = CaseKind::CaseII;
    }
  } else if (fkappa.heavy_right()) {
    tag.kind = theta == 1.0 ? CaseKind::Classical : CaseKind::CaseII;
  } else {
    tag.kind = theta == 1.0 ? CaseKind::Classical : CaseKind::Unclassified;
  }
  return TiltedLaw{kappa, fkappa, theta, tag};
}

double tune_weight(double lambda, const RightPart& right, double kappa, double theta_target) {
  if (!(lambda > kappa)) fail(ErrorCode::Infeasible, "left rate lambda must exceed kappa");
  if (!(theta_target > 0.0 && theta_target <= 1.0)) fail(ErrorCode::Infeasible, "theta must lie in (0,1]");
  const double in_right = right_exp_integral(right, -kappa);
  const double left = lambda / (lambda - kappa);
  if (!(in_right <= 1.0 / theta_target))
    fail(ErrorCode::Infeasible, "right part alone already gives E A^kappa below the target");
  const double q = (1.0 / theta_target - in_right) / (left - in_right);
  if (!(q >= 0.0 && q <= 1.0)) fail(ErrorCode::Infeasible, "target theta not reachable with this left rate");
  return q;
}

double tune_case_i(double lambda, const RightPart& right, double kappa) { return tune_weight(lambda, right, kappa, 1.0); }

MomentValue moments(const TiltedLaw& law, double t, double T) {
  if (!(t >= 0.0)) fail(ErrorCode::InvalidModel, "moment order must be nonnegative");
  const double s = t - law.kappa;
  const TailSpec& fk = law.fkappa;
  // Doubling test per side; with s <= 0 the right side is bounded by the tail and cannot diverge.
  const double r1 = fk.exp_integral(s, 0.0, T), r2 = fk.exp_integral(s, 0.0, 2.0 * T);
  const double l1 = fk.exp_integral(s, -T, 0.0), l2 = fk.exp_integral(s, -2.0 * T, 0.0);
  const double scale = std::abs(r1 + l1);
  const bool right_div = s > 0.0 && (!std::isfinite(r2) || std::abs(r2 - r1) > 1e-3 * scale);
  const bool left_div = !std::isfinite(l2) || std::abs(l2 - l1) > 1e-3 * scale;
  if (right_div || left_div) return {law.theta * (r2 + l2), true};
  return {law.theta * fk.exp_integral(s), false};
}

namespace {

// Truncated integral against F_kappa with the same doubling Cauchy test.
MomentValue cauchy_kappa(const TailSpec& fk, const num::RealFn& phi, double T) {
  const double v1 = fk.expect(phi, -T, T);
  const double v2 = fk.expect(phi, -2.0 * T, 2.0 * T);
  const bool diverged = !std::isfinite(v1) || !std::isfinite(v2) || std::abs(v2 - v1) > 1e-3 * std::abs(v1);
  return {v2, diverged};
}

}  // namespace

CaseReport check_case(const TiltedLaw& law, const BLaw* b) {
  CaseReport rep;
  rep.tag = law.tag;
  rep.theta = law.theta;
  rep.e_kappa_log_plus = cauchy_kappa(law.fkappa, [](double y) { return std::max(y, 0.0); }, 1e6);
  rep.e_a_kappa_log_plus = rep.e_kappa_log_plus.diverged ? num::kInf : law.theta * rep.e_kappa_log_plus.value;
  rep.classical_kgg = !rep.e_kappa_log_plus.diverged;
  if (b) {
    const double k = law.kappa;
    const double pw = std::max(1.0, k);
    auto log_part = [k, pw](double v) {
      const double a = std::abs(v);
      return a > 1.0 ? std::pow(a, k) * std::pow(std::log(a), pw) : 0.0;
    };
    const double k1 = law.kappa;
    if (!b->coupled()) {
      const double e_log_a = law.expect_base([](double y) { return std::max(y, 0.0); });
      const double e_a_log_a = law.expect_base([k1](double y) { return y > 0.0 ? std::exp((k1 - 1.0) * y) * y : 0.0; });
      const double eb_k = b->abs_moment(k);
      const double eb_1 = b->abs_moment(1.0);
      const double e_log = b->expect(log_part);
      rep.b_log_moment = MomentValue{e_log, !std::isfinite(e_log)};
      rep.b_kappa_log_a = MomentValue{eb_k * e_log_a, !std::isfinite(eb_k * e_log_a)};
      rep.b_a_kappa_minus1_log_a = MomentValue{eb_1 * e_a_log_a, !std::isfinite(eb_1 * e_a_log_a)};
    } else {
      const double x0 = std::get<BAffineInA>(b->kind).x0;
      auto bval = [x0](double y) { return std::abs(x0 * std::expm1(y)); };
      auto as_base = [&](auto phi) {
        return cauchy_kappa(law.fkappa, [&, phi](double y) { return law.theta * std::exp(-k1 * y) * phi(y); }, 200.0);
      };
      rep.b_log_moment = as_base([&](double y) { return log_part(bval(y)); });
      rep.b_kappa_log_a = as_base([&](double y) { return y > 0.0 ? std::pow(bval(y), k1) * y : 0.0; });
      rep.b_a_kappa_minus1_log_a =
          as_base([&](double y) { return y > 0.0 ? bval(y) * std::exp((k1 - 1.0) * y) * y : 0.0; });
    }
  }
  return rep;
}

}  // namespace perptail
