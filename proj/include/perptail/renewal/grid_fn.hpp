#pragma once

#include <cstdint>
#include <vector>

#include "perptail/model/tail_spec.hpp"

namespace perptail {

enum class GridKind { Mass, Pointwise };

// Values on nodes x_i = (first + i) h. Mass grids hold the measure of the
// cell (x_i - h/2, x_i + h/2]; `deficit` is the mass known to lie outside.
struct GridFn {
  double h = 0.01;
  std::int64_t first = 0;
  std::vector<double> values;
  GridKind kind = GridKind::Mass;
  double deficit = 0.0;

  std::size_t size() const { return values.size(); }
  std::int64_t last() const { return first + static_cast<std::int64_t>(values.size()) - 1; }
  double x0() const { return static_cast<double>(first) * h; }
  double x(std::size_t i) const { return static_cast<double>(first + static_cast<std::int64_t>(i)) * h; }
  // Mass: sum of cells. Pointwise: trapezoid integral.
  double total() const;
  // Value at a node index, 0 off the grid.
  double at_index(std::int64_t k) const;
  // Pointwise: linear interpolation; Mass: value of the cell holding x.
  double at(double x) const;
  // Restrict (or zero-extend) to node indices [lo, hi].
  GridFn window(std::int64_t lo, std::int64_t hi) const;
};

// Index of the node nearest to x on step h.
std::int64_t node_index(double x, double h);

GridFn build_grid_df(const TailSpec& spec, double x_min, double x_max, double h);

// Samples a function at the nodes of [x_min, x_max].
GridFn sample_pointwise(const num::RealFn& f, double x_min, double x_max, double h);

}  // namespace perptail
