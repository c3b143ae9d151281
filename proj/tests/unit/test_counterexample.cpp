#include <doctest.h>

#include <cmath>

#include "perptail/counterexample/counterexample.hpp"
#include "support.hpp"

using namespace perptail;
using perptail::test::check_code;

TEST_SUITE("counterexample") {
  TEST_CASE("spike shape") {
    const SpikeSpec s{1.1, 5};
    const auto z = build_spiky_z(s, 0.05, 40.0);
    CHECK(z.at(1.0) == doctest::Approx(1.0));
    CHECK(z.at(0.5) == 0.0);
    CHECK(z.at(1.5) == 0.0);
    CHECK(z.at(0.75) == doctest::Approx(0.5));
    CHECK(z.at(4.0) == doctest::Approx(std::pow(2.0, -1.1)));
    CHECK(z.at(2.5) == 0.0);
    double sum = 0.0;
    for (int n = 1; n <= 5; ++n) sum += 0.5 * std::pow(n, -1.1);
    CHECK(spiky_z_integral(s) == doctest::Approx(sum));
    // Tents are linear between quarter points, so the trapezoid rule is exact.
    CHECK(z.total() == doctest::Approx(sum).epsilon(1e-12));
    check_code([] { build_spiky_z({1.1, 3}, 0.03, 20.0); }, ErrorCode::GridTooCoarse);
    check_code([] { build_spiky_z({0.9, 3}, 0.05, 20.0); }, ErrorCode::ParamViolation);
  }

  TEST_CASE("parameter checks") {
    CounterexampleConfig c;
    c.beta = 1.3;
    check_code([&] { counterexample_run(c); }, ErrorCode::ParamViolation);
    c = {};
    c.alpha = 0.6;
    check_code([&] { counterexample_run(c); }, ErrorCode::ParamViolation);
    c = {};
    c.x_max = 500.0;
    check_code([&] { counterexample_run(c); }, ErrorCode::ParamViolation);
  }

  TEST_CASE("default run") {
    const auto r = counterexample_run({});
    REQUIRE(r.rows.size() == 30);
    CHECK(r.a == 0.0);
    CHECK(r.c_alpha == doctest::Approx(std::sin(0.4 * M_PI) / (0.6 * M_PI)));
    CHECK(std::isfinite(r.dri_upper_sum));
    CHECK(r.lower_bound_holds);
    CHECK(r.lower_increasing);
    CHECK(std::abs(r.slope_lower - 0.1) <= 0.05);
    CHECK(r.slope_clipped <= 0.0);
    CHECK(r.predicted_slope == doctest::Approx(0.1));
    // m(x) for pure Pareto(0.4) with unit scale: 1 + (x^0.6 - 1)/0.6 beyond 1.
    for (const auto& row : r.rows) {
      CAPTURE(row.n);
      const double m = 1.0 + (std::pow(row.d_n, 0.6) - 1.0) / 0.6;
      CHECK(row.lower_bound == doctest::Approx(m * 0.5 * std::pow(row.n, -1.1) * r.u_window).epsilon(1e-9));
      CHECK(row.v_n >= row.lower_bound);
    }
    for (std::size_t i = 10; i < r.rows.size(); ++i) CHECK(r.rows[i].v_n > r.rows[i - 1].v_n);
    CHECK(r.doney.verdict == Verdict::Consistent);
  }

  TEST_CASE("serial and parallel agree") {
    CounterexampleConfig a;
    a.n_max = 10;
    a.x_max = 200.0;
    CounterexampleConfig b = a;
    a.exec = Exec::Serial;
    b.exec = Exec::Parallel;
    CHECK(to_table(counterexample_run(a)).str() == to_table(counterexample_run(b)).str());
  }
}
