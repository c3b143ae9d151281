#pragma once

#include "perptail/common/parallel.hpp"
#include "perptail/renewal/grid_fn.hpp"

namespace perptail {

// Discrete convolution of two grids on the same step. Output nodes are
// restricted to [lo, hi]; mass falling outside is added to the deficit, which
// is kept as (mass_a + deficit_a)(mass_b + deficit_b) - mass_out.
// Mass * Mass gives Mass, Pointwise * Mass gives Pointwise.
GridFn convolve(const GridFn& a, const GridFn& b, std::int64_t lo, std::int64_t hi, Exec exec = Exec::Parallel);
GridFn convolve(const GridFn& a, const GridFn& b, Exec exec = Exec::Parallel);

}  // namespace perptail
