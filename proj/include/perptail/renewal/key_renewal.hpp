#pragma once

#include "perptail/renewal/renewal_table.hpp"

namespace perptail {

enum class Normalizer {
  // m(x) (theta = 1, tail index alpha <= 1).
  MOfX,
  // 1 / g(x), g(x) = F_kappa(x + 1) - F_kappa(x) (theta < 1).
  GWindow,
  None,
};

// g(x) = F_kappa(x + 1) - F_kappa(x).
double local_window_g(const TailSpec& spec, double x);

// x -> normalizer(x) * int z(x - y) U(dy) on the nodes of the table window.
GridFn key_renewal_convolve(const GridFn& z, const RenewalTable& table, Normalizer normalizer,
                            const TailSpec* spec = nullptr, Exec exec = Exec::Parallel);

// Predicted limit of the normalized convolution: C_alpha int z (m) or
// theta int z / (1 - theta)^2 (g window).
double key_renewal_limit(const GridFn& z, const RenewalTable& table, Normalizer normalizer);

}  // namespace perptail
