#pragma once

#include <optional>
#include <vector>

#include "perptail/renewal/convolve.hpp"

namespace perptail {

enum class RenewalAlgorithm {
  // U_N = sum_{n < N} theta^n F^{*n}, one convolution per term.
  Sequential,
  // U_{2m} = U_m + theta^m F^{*m} * U_m and F^{*2m} = F^{*m} * F^{*m}.
  Doubling,
};

struct RenewalConfig {
  double theta = 1.0;
  std::size_t n_max = 1 << 16;
  // Stop once the newest block of terms carries less than tol: mass inside
  // the window when theta = 1, total mass when theta < 1.
  double tol = 1e-10;
  RenewalAlgorithm algorithm = RenewalAlgorithm::Doubling;
  Exec exec = Exec::Parallel;
};

struct RenewalTable {
  // Cell masses of U on the grid window of the input law.
  GridFn u;
  double theta = 1.0;
  std::size_t n_terms = 0;
  // Mass of the computed terms that fell outside the window.
  double mass_deficit = 0.0;
  // Size of the last block of terms added (stopping statistic).
  double last_contribution = 0.0;
  // Filled when a TailSpec is attached.
  std::vector<double> m_values;
  double c_alpha = 1.0;

  // U(x, x + w], summing cells with nodes in that range.
  double increment(double x, double w) const;
  // In-window mass plus the deficit; equals sum_{n < N} theta^n.
  double total_mass() const { return u.total() + mass_deficit; }
  double window_mass() const { return u.total(); }
};

// Renewal measure of theta * F restricted to the window of `fk`.
RenewalTable renewal_increments(const GridFn& fk, const RenewalConfig& cfg);

// Adds m(x) at the grid nodes and C_alpha for the law's tail index.
void attach_spec(RenewalTable& table, const TailSpec& spec);

struct SrtRow {
  double x;
  double m;
  double increment;
  double ratio;  // m(x) [U(x + h) - U(x)] / (h C_alpha)
};

struct SrtReport {
  std::vector<SrtRow> rows;
  double c_alpha;
  // |ratio - 1| does not increase over the last decade of the ladder.
  bool monotone_last_decade;
  double last_ratio;
};

SrtReport srt_check(const RenewalTable& table, const TailSpec& spec, double h, const std::vector<double>& ladder);

}  // namespace perptail
