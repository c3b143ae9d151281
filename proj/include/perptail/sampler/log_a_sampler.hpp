#pragma once

#include <variant>

#include "perptail/common/parallel.hpp"
#include "perptail/model/tilted_law.hpp"

namespace perptail {

// A = 0 almost surely; then X = B.
struct ZeroA {};

using ALaw = std::variant<TiltedLaw, ZeroA>;

enum class Measure { P, PKappa };

// Exact draws of log A. Under P the base law theta e^{-kappa y} F_kappa(dy)
// is sampled by composition over the mixture components, each tilted
// component by a closed form or by rejection from the untilted one.
class LogASampler {
 public:
  explicit LogASampler(const TiltedLaw& law);

  double draw(Rng& rng, Measure m) const { return m == Measure::P ? draw_p(rng) : draw_kappa(rng); }
  double draw_p(Rng& rng) const;
  // Inverse transform through the F_kappa quantile.
  double draw_kappa(Rng& rng) const;

  // Probability of the left component under P.
  double left_probability() const { return p_left_; }

 private:
  double draw_right_tilted(Rng& rng) const;
  double draw_left_tilted(Rng& rng) const;

  TiltedLaw law_;
  double kappa_;
  double p_left_ = 0.0;
  // Pareto right part: probability of its atom at 0 within the tilted right
  // component, the rejection anchor, and sf at the anchor.
  double p_atom_ = 0.0;
  double anchor_ = 0.0;
  double sf_anchor_ = 1.0;
};

}  // namespace perptail
