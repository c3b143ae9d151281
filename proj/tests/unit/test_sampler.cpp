#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "perptail/common/numerics.hpp"
#include "perptail/model/catalog.hpp"
#include "perptail/model/kappa.hpp"
#include "perptail/sampler/sampler.hpp"
#include "perptail/sampler/tail_estimate.hpp"
#include "support.hpp"

using namespace perptail;
using perptail::test::check_code;

namespace {

SimConfig cfg(std::size_t n, std::uint64_t seed = 1, Exec exec = Exec::Parallel) {
  SimConfig c;
  c.seed = seed;
  c.n_paths = n;
  c.exec = exec;
  return c;
}

// A = e^{log_a} almost surely.
TiltedLaw constant_a(double log_a, double kappa = 1.0) { return base_from_tilted(TailSpec(PointMassRight{log_a}), kappa); }

double frac_above(const std::vector<double>& v, double x) {
  return static_cast<double>(std::count_if(v.begin(), v.end(), [x](double d) { return d > x; })) /
         static_cast<double>(v.size());
}

bool in_ci(double p_true, std::size_t k, std::size_t n, double widen = 1.0) {
  const auto ci = num::wilson(k, n, 1.96 * widen);
  return ci.lower <= p_true && p_true <= ci.upper;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_SUITE("sampler") {
  TEST_CASE("point-mass tilt draws the atom") {
    const auto law = constant_a(-1.0, 0.5);
    for (auto m : {Measure::P, Measure::PKappa})
      for (double v : sample_log_a(law, m, 1000, 3)) CHECK(v == -1.0);
  }

  TEST_CASE("tilted draws of the case I mixture follow the closed-form survival") {
    const auto law = catalog("case_i_pareto07").law;
    const double q = law.fkappa.left_weight();
    const std::size_t n = 1000000;
    const auto d = sample_log_a(law, Measure::PKappa, n, 17);
    for (double x : {1.0, 10.0, 100.0}) {
      CAPTURE(x);
      const auto k = static_cast<std::size_t>(frac_above(d, x) * n + 0.5);
      CHECK(in_ci((1.0 - q) * std::pow(x, -0.7), k, n, 1.5));
    }
    // Left part: P_kappa{log A < -1} = q e^{-2}.
    const auto k = static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](double v) { return v < -1.0; }));
    CHECK(in_ci(q * std::exp(-2.0), k, n, 1.5));
  }

  TEST_CASE("draws under P follow the base law") {
    const auto law = catalog("classical_lognormal").law;
    const std::size_t n = 200000;
    const auto d = sample_log_a(law, Measure::P, n, 5);
    for (double x : {-3.0, -1.0, 0.5}) {
      const auto k = static_cast<std::size_t>(frac_above(d, x) * n + 0.5);
      CHECK(in_ci(num::normal_sf((x + 1.0) / std::sqrt(2.0)), k, n, 1.5));
    }
  }

  TEST_CASE("serial and parallel runs are bitwise identical") {
    const auto m = catalog("case_ii_pareto15");
    const auto a = sample_perpetuity(m.law, m.b, cfg(20000, 9, Exec::Serial));
    const auto b = sample_perpetuity(m.law, m.b, cfg(20000, 9, Exec::Parallel));
    const auto c = sample_perpetuity(m.law, m.b, cfg(20000, 9, Exec::Parallel));
    CHECK(same_bits(a.draws, b.draws));
    CHECK(same_bits(b.draws, c.draws));
    const auto d = sample_perpetuity(m.law, m.b, cfg(20000, 10, Exec::Parallel));
    CHECK_FALSE(same_bits(a.draws, d.draws));
    const auto ga = estimate_goldie_constant(a, m.law, m.b, m.law.kappa, 4096, 3, GoldieVariant::Plus, 64, Exec::Serial);
    const auto gb = estimate_goldie_constant(a, m.law, m.b, m.law.kappa, 4096, 3, GoldieVariant::Plus, 64, Exec::Parallel);
    CHECK(ga.estimate == gb.estimate);
    CHECK(ga.half_width == gb.half_width);
    const auto la = sample_log_a(m.law, Measure::PKappa, 5000, 2, 64, Exec::Serial);
    CHECK(same_bits(la, sample_log_a(m.law, Measure::PKappa, 5000, 2, 64, Exec::Parallel)));
  }

  TEST_CASE("constant A and B give the fixed point") {
    const auto law = constant_a(std::log(0.5));
    const BLaw b{BConstant{1.0}, 2.0};
    for (double v : sample_perpetuity(law, b, cfg(1000)).draws) CHECK(std::abs(v - 2.0) < 1e-11);
    for (double v : sample_max_perpetuity(law, b, cfg(1000)).draws) CHECK(v == 1.0);
  }

  TEST_CASE("degenerate model draws are constant") {
    const auto m = catalog("degenerate");
    for (double v : sample_perpetuity(m.law, m.b, cfg(20000)).draws) CHECK(v == doctest::Approx(3.0).epsilon(1e-9));
  }

  TEST_CASE("A = 0 reduces X to B") {
    const auto x = sample_perpetuity(ZeroA{}, BLaw{BExponential{1.0}, 2.0}, cfg(200000));
    for (double t : {0.5, 1.0, 3.0}) {
      const auto k = static_cast<std::size_t>(frac_above(x.draws, t) * 200000 + 0.5);
      CHECK(in_ci(std::exp(-t), k, 200000, 1.5));
    }
    const auto y = sample_max_perpetuity(ZeroA{}, BLaw{BTwoPoint{1.0, 0.5, 2.0}, 2.0}, cfg(100000));
    std::size_t ones = 0;
    for (double v : y.draws) {
      CHECK((v == 1.0 || v == 2.0));
      ones += v == 1.0;
    }
    CHECK(in_ci(0.5, ones, 100000, 1.5));
  }

  TEST_CASE("max perpetuity with B = 1 is e^M") {
    const auto m = catalog("two_point_lattice");
    const BLaw one{BConstant{1.0}, 2.0};
    const std::size_t n = 400000;
    const auto x = sample_max_perpetuity(m.law, one, cfg(n, 21));
    const auto w = sample_max_rw(m.law, cfg(n, 22));
    for (int k = 1; k <= 3; ++k) {
      const double p = std::pow(0.25, k);
      const double lvl = k - 0.5;
      CHECK(in_ci(p, static_cast<std::size_t>(frac_above(x.draws, std::exp(lvl)) * n + 0.5), n, 1.5));
      CHECK(in_ci(p, static_cast<std::size_t>(frac_above(w.draws, lvl) * n + 0.5), n, 1.5));
    }
  }

  TEST_CASE("random walk maximum") {
    for (double v : sample_max_rw(constant_a(-1.0), cfg(1000)).draws) CHECK(v == 0.0);
    const auto w = sample_max_rw(catalog("case_i_pareto07").law, cfg(10000));
    for (double v : w.draws) CHECK(v >= 0.0);
  }

  TEST_CASE("importance sampling on the lattice walk") {
    const auto law = catalog("two_point_lattice").law;
    const auto e = is_tail_max_rw(law, 2.5, cfg(100000));
    CHECK(e.estimate == doctest::Approx(0.015625).epsilon(1e-9));
    for (double x : {0.5, 3.5, 7.5}) {
      const auto r = is_tail_max_rw(law, x, cfg(20000));
      const double exact = std::pow(0.25, std::ceil(x));
      CHECK(std::abs(r.estimate - exact) <= 3.0 * std::max(r.ci.half_width(), 1e-12 * exact));
    }
  }

  TEST_CASE("importance sampling bound and agreement with naive sampling") {
    const auto law = catalog("case_i_pareto07").law;
    const std::size_t n = 200000;
    const auto w = sample_max_rw(law, cfg(n, 4));
    for (double x : {1.0, 2.0, 4.0}) {
      const auto r = is_tail_max_rw(law, x, cfg(50000, 8));
      CHECK(r.estimate <= std::exp(-law.kappa * x));
      const double naive = frac_above(w.draws, x);
      const auto ci = num::wilson(static_cast<std::size_t>(naive * n + 0.5), n);
      CHECK(r.ci.upper >= ci.lower);
      CHECK(r.ci.lower <= ci.upper);
    }
    check_code([] { is_tail_max_rw(catalog("case_ii_pareto15").law, 1.0, cfg(10)); }, ErrorCode::CaseMismatch);
  }

  TEST_CASE("Goldie constants") {
    const auto ex = sample_perpetuity(ZeroA{}, BLaw{BExponential{1.0}, 2.0}, cfg(200000));
    const auto g = estimate_goldie_constant(ex, ZeroA{}, BLaw{BExponential{1.0}, 2.0}, 1.0, 200000, 3, GoldieVariant::Plus);
    CHECK(std::abs(g.estimate - 1.0) <= 3.0 * g.half_width / 1.96);

    const auto dm = catalog("degenerate");
    const auto dx = sample_perpetuity(dm.law, dm.b, cfg(200000));
    for (auto v : {GoldieVariant::Plus, GoldieVariant::Minus}) {
      const auto e = estimate_goldie_constant(dx, dm.law, dm.b, 1.0, 200000, 5, v);
      CHECK(std::abs(e.estimate) <= 3.0 * e.half_width / 1.96 + 1e-12);
    }

    const auto cm = catalog("case_ii_pareto15");
    const auto cx = sample_perpetuity(cm.law, cm.b, cfg(200000));
    const auto p = estimate_goldie_constant(cx, cm.law, cm.b, 1.0, 200000, 6, GoldieVariant::Plus);
    const auto q = estimate_goldie_constant(cx, cm.law, cm.b, 1.0, 200000, 6, GoldieVariant::Minus);
    CHECK(p.estimate + q.estimate > 3.0 * (p.half_width + q.half_width) / 1.96);

    const auto lm = catalog("case_i_pareto07");
    const BLaw bu{BUniform{0.0, 1.0}, 2.0};
    const auto lx = sample_max_perpetuity(lm.law, bu, cfg(100000));
    const auto mx = estimate_goldie_constant(lx, lm.law, bu, 1.0, 100000, 7, GoldieVariant::Max);
    CHECK(mx.estimate - 3.0 * mx.half_width / 1.96 <= 0.5);
    CHECK(mx.estimate > 0.0);
  }

  TEST_CASE("pathwise bound behind the max-variant cap") {
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int i = 0; i < 10000; ++i) {
      const double a = u(g), b = u(g), k = 0.2 + u(g) / 2.0;
      CHECK(std::pow(std::max(a, b), k) - std::pow(a, k) <= std::pow(b, k) + 1e-12);
    }
  }

  TEST_CASE("tail estimates") {
    const auto c = tail_estimate(std::vector<double>(100, 2.0), {1.0, 3.0});
    CHECK(c.survival == std::vector<double>{1.0, 0.0});
    const auto x = sample_perpetuity(ZeroA{}, BLaw{BExponential{1.0}, 2.0}, cfg(100000));
    const auto e = tail_estimate(x.draws, geometric_ladder(0.1, 10.0, 5));
    for (std::size_t i = 0; i < e.thresholds.size(); ++i) {
      CHECK(e.ci_lower[i] <= e.survival[i]);
      CHECK(e.survival[i] <= e.ci_upper[i]);
      if (i) CHECK(e.survival[i] <= e.survival[i - 1]);
    }
    const auto one = tail_estimate(x.draws, {1.0});
    CHECK(in_ci(std::exp(-1.0), one.exceedances[0], one.n, 1.5));
    check_code([] { tail_estimate({}, {1.0}); }, ErrorCode::EmptySample);
  }

  TEST_CASE("doubling the sample shrinks CIs by about 1/sqrt 2") {
    const auto m = catalog("case_ii_pareto15");
    const auto a = sample_perpetuity(m.law, m.b, cfg(100000, 3));
    const auto b = sample_perpetuity(m.law, m.b, cfg(200000, 3));
    const std::vector<double> th = {1.0, 3.0, 10.0};
    const auto ea = tail_estimate(a.draws, th), eb = tail_estimate(b.draws, th);
    for (std::size_t i = 0; i < th.size(); ++i)
      CHECK(eb.ci_halfwidth[i] / ea.ci_halfwidth[i] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
  }

  TEST_CASE("error paths") {
    SimConfig c = cfg(1000);
    c.max_horizon = 1;
    check_code([&] { sample_perpetuity(constant_a(std::log(0.5)), BLaw{BConstant{1.0}, 2.0}, c); },
               ErrorCode::TruncationNotConverged);
    c.n_paths = 0;
    check_code([&] { c.validate(); }, ErrorCode::ConfigInvalid);
  }
}
