#pragma once

#include "perptail/renewal/grid_fn.hpp"

namespace perptail {

// g_hat(s) = int_{-inf}^s e^{-(s-x)} g(x) dx for g linear between nodes and
// zero before the first node. The output runs ceil(40/h) nodes past the
// input so the exponential decay after the support is kept.
GridFn smooth_transform(const GridFn& g);

}  // namespace perptail
