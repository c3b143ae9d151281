#pragma once

#include <string>
#include <variant>

#include "perptail/common/numerics.hpp"
#include "perptail/common/parallel.hpp"

namespace perptail {

struct BConstant {
  double b = 1.0;
};
struct BTwoPoint {
  double b1 = 0.0;
  double p = 0.5;
  double b2 = 1.0;
};
struct BExponential {
  double rate = 1.0;
};
struct BUniform {
  double lo = 0.0;
  double hi = 1.0;
};
// B = x0 (1 - A), so that A x0 + B = x0 pathwise.
struct BAffineInA {
  double x0 = 1.0;
};

using BKind = std::variant<BConstant, BTwoPoint, BExponential, BUniform, BAffineInA>;

struct BLaw {
  BKind kind = BConstant{};
  // Declared moment order, E|B|^nu < inf; must exceed kappa.
  double nu = 2.0;

  // Draws B given the log A of the same step (ignored unless coupled).
  double sample(Rng& rng, double log_a) const;
  bool coupled() const { return std::holds_alternative<BAffineInA>(kind); }
  bool nonnegative() const;
  // E|B|^p in closed form; NaN for the coupled kind.
  double abs_moment(double p) const;
  // E phi(B) for the independent kinds.
  double expect(const num::RealFn& phi) const;
  std::string describe() const;
  void validate(double kappa) const;
};

}  // namespace perptail
