#include "perptail/renewal/smoothing.hpp"

#include <cmath>

#include "perptail/common/error.hpp"

namespace perptail {

GridFn smooth_transform(const GridFn& g) {
  if (g.kind != GridKind::Pointwise) fail(ErrorCode::InvalidModel, "smoothing transform takes a pointwise grid");
  const double h = g.h;
  const double decay = std::exp(-h);
  // Exact cell integral of e^{-(h-t)} (g0 + (g1 - g0) t/h) over [0, h].
  const double c1 = (h + std::expm1(-h)) / h;
  const double c0 = -std::expm1(-h) - c1;
  const auto extra = static_cast<std::size_t>(std::ceil(40.0 / h));
  GridFn out{h, g.first, std::vector<double>(g.size() + extra, 0.0), GridKind::Pointwise, 0.0};
  double prev_g = g.values.empty() ? 0.0 : g.values[0];
  double acc = 0.0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double next_g = i < g.size() ? g.values[i] : 0.0;
    acc = decay * acc + c0 * prev_g + c1 * next_g;
    out.values[i] = acc;
    prev_g = next_g;
  }
  return out;
}

}  // namespace perptail
