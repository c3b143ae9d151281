#pragma once

#include <cstddef>
#include <vector>

#include "perptail/common/numerics.hpp"
#include "perptail/sampler/tail_estimate.hpp"

namespace perptail {

// Counter-model for the growth condition. Block k >= 1 is one heavy unit
// cell of mass proportional to 2^-k followed by k + 2 light unit cells of
// mass proportional to 4^-k each; mass is uniform within a cell. A window
// inside the light run of block k compares to the next heavy cell as
// 2^{k-1}, so sup_{y > x} window ratios are unbounded.
class CellMassLaw {
 public:
  explicit CellMassLaw(std::size_t blocks = 500);

  // F(x + w) - F(x), summed over overlapping cells (no cancellation).
  double window(double x, double w) const;
  // First light-run start at or after x (the last one beyond the support).
  double light_start(double x) const;
  double total_mass() const;
  double support_end() const { return static_cast<double>(cells_.size()); }

 private:
  std::vector<double> cells_;
  std::vector<std::size_t> light_starts_;
};

// Exact TailEstimate for a known survival function: survival = sf(t),
// exceedances = round(n sf(t)), Wilson intervals from those counts.
TailEstimate synthetic_estimate(const num::RealFn& sf, const std::vector<double>& thresholds, std::size_t n);

}  // namespace perptail
