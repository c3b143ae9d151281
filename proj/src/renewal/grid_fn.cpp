#include "perptail/renewal/grid_fn.hpp"

#include <cmath>

#include "perptail/common/error.hpp"

namespace perptail {

double GridFn::total() const {
  double s = 0.0;
  if (kind == GridKind::Mass) {
    for (double v : values) s += v;
    return s;
  }
  for (std::size_t i = 0; i + 1 < values.size(); ++i) s += 0.5 * (values[i] + values[i + 1]);
  return s * h;
}

double GridFn::at_index(std::int64_t k) const {
  if (k < first || k > last()) return 0.0;
  return values[static_cast<std::size_t>(k - first)];
}

double GridFn::at(double xv) const {
  if (kind == GridKind::Mass) return at_index(node_index(xv, h));
  const double t = xv / h;
  const auto k = static_cast<std::int64_t>(std::floor(t));
  const double frac = t - static_cast<double>(k);
  return (1.0 - frac) * at_index(k) + frac * at_index(k + 1);
}

GridFn GridFn::window(std::int64_t lo, std::int64_t hi) const {
  GridFn out{h, lo, std::vector<double>(static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo + 1)), 0.0), kind,
             deficit};
  double dropped = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::int64_t k = first + static_cast<std::int64_t>(i);
    if (k >= lo && k <= hi)
      out.values[static_cast<std::size_t>(k - lo)] = values[i];
    else
      dropped += values[i];
  }
  if (kind == GridKind::Mass) out.deficit += dropped;
  return out;
}

std::int64_t node_index(double x, double h) { return static_cast<std::int64_t>(std::llround(x / h)); }

GridFn build_grid_df(const TailSpec& spec, double x_min, double x_max, double h) {
  if (!(h > 0.0)) fail(ErrorCode::InvalidModel, "grid step must be positive");
  if (!(x_min < x_max)) fail(ErrorCode::InvalidModel, "grid needs x_min < x_max");
  const std::int64_t lo = node_index(x_min, h);
  const std::int64_t hi = node_index(x_max, h);
  GridFn g{h, lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1)), GridKind::Mass, 0.0};
  const auto atoms = spec.atoms();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double left = g.x(i) - 0.5 * h;
    const double m = std::max(0.0, spec.window_mass(left, h));
    double atomic = 0.0;
    for (const auto& a : atoms)
      if (a.x > left && a.x <= left + h) atomic += a.mass;
    if (m - atomic > 0.05)
      fail(ErrorCode::GridTooCoarse, "cell at x = " + std::to_string(g.x(i)) + " carries continuous mass " +
                                         std::to_string(m - atomic) + " > 0.05");
    g.values[i] = m;
  }
  g.deficit = spec.df(g.x(0) - 0.5 * h) + spec.sf(g.x(g.size() - 1) + 0.5 * h);
  return g;
}

GridFn sample_pointwise(const num::RealFn& f, double x_min, double x_max, double h) {
  const std::int64_t lo = node_index(x_min, h);
  const std::int64_t hi = node_index(x_max, h);
  GridFn g{h, lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1)), GridKind::Pointwise, 0.0};
  for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = f(g.x(i));
  return g;
}

}  // namespace perptail
