#include <doctest.h>

#include <cmath>

#include "perptail/diagnostics/doney.hpp"
#include "perptail/diagnostics/slowvary.hpp"
#include "perptail/diagnostics/subexp.hpp"
#include "perptail/diagnostics/synthetic.hpp"
#include "perptail/model/catalog.hpp"
#include "support.hpp"

using namespace perptail;
using perptail::test::check_code;
using perptail::test::simpson;

namespace {

// Direct y-space quadrature for pure Pareto(alpha): x H(x) int_1^{dx} f(x-y) / (y H(y)^2) dy.
double doney_oracle(double alpha, double x, double delta) {
  auto f = [&](double y) { return alpha * std::pow(x - y, -alpha - 1.0) * std::pow(y, 2.0 * alpha - 1.0); };
  return x * std::pow(x, -alpha) * simpson(f, 1.0, delta * x, 200000);
}

double find_value(const SweepReport& r, const std::string& q, double x, double param = -1.0) {
  for (const auto& row : r.rows)
    if (row.quantity == q && row.x == x && (param < 0.0 || row.param == param)) return row.value;
  return std::nan("");
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("doney functional matches direct quadrature") {
    for (double a : {0.3, 0.4, 0.7})
      for (double x : {1e2, 1e4})
        for (double d : {0.05, 0.2}) {
          CAPTURE(a);
          CAPTURE(x);
          CAPTURE(d);
          CHECK(doney_functional(TailSpec(ParetoRight{a, 1.0, 0.0}), x, d) ==
                doctest::Approx(doney_oracle(a, x, d)).epsilon(1e-6));
        }
  }

  TEST_CASE("doney functional is monotone in delta and vanishes on an empty range") {
    const TailSpec s(ParetoRight{0.4, 1.0, 0.0});
    double prev = 0.0;
    for (double d : {0.001, 0.01, 0.05, 0.1, 0.2, 0.4}) {
      const double v = doney_functional(s, 1e4, d);
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(doney_functional(s, 50.0, 0.01) == 0.0);
    check_code([&] { doney_functional(s, 100.0, 0.6); }, ErrorCode::ParamViolation);
    check_code([&] { doney_functional(TailSpec(PointMassRight{95.0}), 100.0, 0.1); }, ErrorCode::NoDensity);
  }

  TEST_CASE("doney sweep trends") {
    const auto r4 = doney_sweep(TailSpec(ParetoRight{0.4, 1.0, 0.0}));
    CHECK(r4.slope == doctest::Approx(0.8).epsilon(0.125));
    CHECK(r4.verdict == Verdict::Consistent);
    const auto r7 = doney_sweep(TailSpec(ParetoRight{0.7, 1.0, 0.0}));
    CHECK(r7.slope > 1.0);
    CHECK(r7.verdict == Verdict::Consistent);
    CHECK(doney_sweep(TailSpec(ParetoRight{0.4, 1.0, 0.0}), {1e2, 1e3}).verdict == Verdict::Inconclusive);
  }

  TEST_CASE("exponential window ratio has a closed form") {
    const std::vector<double> xs = {5.0, 50.0, 500.0};
    const auto r = delta_subexp_check(TailSpec(ExponentialRight{1.0}), 1.0, xs);
    for (double x : xs) {
      const double want = ((x + 1.0) - (x + 2.0) / std::exp(1.0)) / (2.0 * (1.0 - 1.0 / std::exp(1.0)));
      CHECK(find_value(r, "r1", x) == doctest::Approx(want).epsilon(1e-6));
    }
    CHECK(r.verdict == Verdict::Inconsistent);
  }

  TEST_CASE("heavy tails are delta-subexponential") {
    const std::vector<TailSpec> specs = {TailSpec(ParetoRight{1.5, 1.0, 0.0}), TailSpec(LognormalRight{0.0, 1.0}),
                                         TailSpec(WeibullRight{0.5})};
    for (const auto& s : specs) {
      CAPTURE(s.describe());
      const auto r = delta_subexp_check(s, 1.0, {1e2, 1e3, 1e4});
      CHECK(r.verdict == Verdict::Consistent);
      for (const auto& row : r.rows)
        if (row.quantity == "r1") CHECK(row.value >= 1.0 - 1e-3);
    }
  }

  TEST_CASE("point mass and bad windows") {
    CHECK(delta_subexp_check(TailSpec(PointMassRight{3.0}), 1.0).verdict == Verdict::Inconsistent);
    check_code([] { delta_subexp_check(TailSpec(ParetoRight{1.5, 1.0, 0.0}), 0.0); }, ErrorCode::ParamViolation);
    check_code([] { delta_subexp_check(TailSpec(ParetoRight{1.5, 1.0, 0.0}), 1e-8, {1e2, 1e5}); },
               ErrorCode::GridTooCoarse);
  }

  TEST_CASE("window growth") {
    const auto p = growth_check(TailSpec(ParetoRight{1.5, 1.0, 0.0}), 1.0);
    CHECK(p.verdict == Verdict::Consistent);
    CHECK(p.last_value <= 1.0 + 1e-12);

    const CellMassLaw law;
    CHECK(law.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> xs;
    for (int k = 1; k <= 4; ++k) xs.push_back(law.light_start(std::pow(10.0, k)) + 0.25);
    const auto r = growth_check([&law](double x, double w) { return law.window(x, w); }, 0.5, xs);
    CHECK(r.verdict == Verdict::Inconsistent);
    CHECK(r.last_value > 1e6);
  }

  TEST_CASE("slowvary recovers a synthetic plateau") {
    const auto law = catalog("case_i_pareto07").law;
    const double K = 0.8;
    auto sf = [&](double x) { return K / tail_normalizer(law, SlowvaryMode::CaseI, x); };
    auto est = synthetic_estimate(sf, geometric_ladder(10.0, 1e4, 4), 100000000);
    const auto fit = slowvary_fit(est, law, SlowvaryMode::CaseI);
    CHECK(std::abs(fit.report.slope) < 0.02);
    CHECK(fit.plateau == doctest::Approx(K).epsilon(0.03));
    CHECK(fit.report.verdict == Verdict::Consistent);
    CHECK(fit.plateau_exceedances >= 200);

    auto short_est = synthetic_estimate(sf, {10.0, 12.0, 14.0, 16.0, 18.0}, 1000);
    check_code([&] { slowvary_fit(short_est, law, SlowvaryMode::CaseI); }, ErrorCode::InsufficientRange);
  }

  TEST_CASE("normalizers") {
    const auto law = catalog("case_ii_pareto15").law;
    const double x = 50.0;
    const double s = std::log(x);
    const double g = law.fkappa.sf(s) - law.fkappa.sf(s + 1.0);
    CHECK(tail_normalizer(law, SlowvaryMode::CaseII, x) == doctest::Approx(x / g).epsilon(1e-10));
    const auto l1 = catalog("case_i_lomax07").law;
    const double q = l1.fkappa.left_weight();
    // m(s) = int_0^s [F(-y) + 1 - F(y)] dy.
    const double m = q * (1.0 - std::exp(-2.0 * s)) / 2.0 + (1.0 - q) * (std::pow(1.0 + s, 0.3) - 1.0) / 0.3;
    CHECK(tail_normalizer(l1, SlowvaryMode::CaseI, x) == doctest::Approx(x * m).epsilon(1e-8));
    CHECK(tail_normalizer(law, SlowvaryMode::Classical, x) == doctest::Approx(x));
  }
}
