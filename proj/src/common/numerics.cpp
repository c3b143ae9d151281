#include "perptail/common/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/roots.hpp>

namespace perptail::num {

double integrate(const RealFn& f, double a, double b, double rel_tol) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel_tol, &err);
}

double integrate_singular(const RealFn& f, double a, double b, double rel_tol) {
  if (!(b > a)) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  // Two-argument form: abscissae that round onto an endpoint are rebuilt
  // from the exact distance to it.
  auto g = [&](double x, double xc) {
    if (xc < 0.0) return f(a - xc);
    if (xc > 0.0) return f(b - xc);
    return f(x);
  };
  return rule.integrate(g, a, b, rel_tol);
}

double integrate_geometric(const RealFn& f, double a, int direction, double limit, double w0) {
  double total = 0.0;
  double width = w0;
  double left = a;
  int quiet = 0;
  for (int panel = 0; panel < 1100; ++panel) {
    double right = left + direction * width;
    bool last = direction > 0 ? right >= limit : right <= limit;
    if (last) right = limit;
    const double lo = std::min(left, right);
    const double hi = std::max(left, right);
    const double piece = integrate(f, lo, hi);
    if (!std::isfinite(piece)) return num::kInf;
    total += piece;
    if (last) break;
    quiet = std::abs(piece) <= 1e-17 * std::abs(total) ? quiet + 1 : 0;
    if (quiet >= 3 || (total == 0.0 && piece == 0.0 && panel > 60)) break;
    left = right;
    width *= 2.0;
  }
  return total;
}

double integrate_line(const RealFn& f, double a, double b, std::vector<double> anchors,
                      double min_width) {
  if (!(b > a)) return 0.0;
  std::vector<double> pts;
  for (double p : anchors)
    if (std::isfinite(p) && p > a && p < b) pts.push_back(p);
  if (std::isfinite(a)) pts.push_back(a);
  if (std::isfinite(b)) pts.push_back(b);
  if (pts.empty()) pts.push_back(0.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<double> edges;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double p = pts[i];
    const double q = pts[i + 1];
    const double mid = 0.5 * (p + q);
    edges.push_back(p);
    for (double d = min_width; p + d < mid; d *= 2.0) edges.push_back(p + d);
    edges.push_back(mid);
    std::vector<double> back;
    for (double d = min_width; q - d > mid; d *= 2.0) back.push_back(q - d);
    edges.insert(edges.end(), back.rbegin(), back.rend());
  }
  edges.push_back(pts.back());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // Panels touching an anchor may carry an integrable singularity at the
  // anchor; the double-exponential rule copes with those.
  auto is_anchor = [&pts](double e) { return std::binary_search(pts.begin(), pts.end(), e); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    if (is_anchor(lo) || is_anchor(hi)) {
      try {
        total += integrate_singular(f, lo, hi);
        continue;
      } catch (const std::exception&) {
      }
    }
    total += integrate(f, lo, hi);
  }
  if (!std::isfinite(a)) total += integrate_geometric(f, pts.front(), -1, a, min_width);
  if (!std::isfinite(b)) total += integrate_geometric(f, pts.back(), +1, b, min_width);
  return total;
}

std::optional<double> find_root(const RealFn& f, double lo, double hi, double x_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) return std::nullopt;
  std::uintmax_t max_iter = 500;
  auto tol = [x_tol](double l, double r) { return std::abs(r - l) <= x_tol * std::max(1.0, std::abs(l)); };
  auto [l, r] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
  return 0.5 * (l + r);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }
double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_quantile(double p) { return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p); }
double normal_isf(double u) { return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u); }

double c_alpha(double alpha) {
  if (alpha >= 1.0) return 1.0;
  return 1.0 / (std::tgamma(alpha) * std::tgamma(2.0 - alpha));
}

Interval wilson(std::size_t k, std::size_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

LineFit ols(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return {};
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace perptail::num
