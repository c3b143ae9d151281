#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace perptail::num {

using RealFn = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Adaptive Gauss-Kronrod (31 point) on a finite interval, relative tolerance
// `rel_tol` against the L1 norm of the integrand.
double integrate(const RealFn& f, double a, double b, double rel_tol = 1e-13);

// Double-exponential rule; tolerates integrable endpoint singularities.
double integrate_singular(const RealFn& f, double a, double b, double rel_tol = 1e-12);

// Integral of f over [a, b] split at `anchors` (kinks or bumps of f). Panels
// are refined geometrically towards every anchor, starting from `min_width`.
// Infinite ends are handled by doubling panels until the contributions are
// negligible relative to the running total.
double integrate_line(const RealFn& f, double a, double b, std::vector<double> anchors,
                      double min_width = 1.0 / 64.0);

// Integral of f over [a, a + L) for a or L infinite: panels of width w0, 2 w0,
// 4 w0, ... going right (direction +1) or left (direction -1) from `a`, cut at
// `limit`. Stops when three consecutive panels contribute less than 1e-17 of the
// running total, or a non-finite value shows up.
double integrate_geometric(const RealFn& f, double a, int direction, double limit, double w0 = 1.0);

// Bracketed root of a continuous function. Returns nullopt when f(lo) and
// f(hi) have the same sign.
std::optional<double> find_root(const RealFn& f, double lo, double hi, double x_tol = 1e-14);

double normal_cdf(double z);
double normal_sf(double z);
double normal_pdf(double z);
double normal_quantile(double p);
// Inverse of the upper tail: returns z with normal_sf(z) = u.
double normal_isf(double u);

// C_alpha = 1 / (Gamma(alpha) Gamma(2 - alpha)); C_1 = 1.
double c_alpha(double alpha);

struct Interval {
  double lower;
  double upper;
  double half_width() const { return 0.5 * (upper - lower); }
};

// Wilson score interval for a binomial proportion k/n (z = 1.96 for 95%).
Interval wilson(std::size_t k, std::size_t n, double z = 1.96);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
LineFit ols(std::span<const double> x, std::span<const double> y);

}  // namespace perptail::num
