#include "perptail/sampler/log_a_sampler.hpp"

#include <cmath>

#include "perptail/common/error.hpp"

namespace perptail {

LogASampler::LogASampler(const TiltedLaw& law) : law_(law), kappa_(law.kappa) {
  const auto& fk = law.fkappa;
  const double q = fk.left_weight();
  if (q > 0.0) {
    const double in_left = std::visit([&](const auto& l) { return l.exp_integral(-kappa_, -num::kInf, num::kInf); }, fk.left());
    p_left_ = std::min(1.0, law.theta * q * in_left);
  }
  if (const auto* p = std::get_if<ParetoRight>(&fk.right())) {
    anchor_ = p->cap();
    sf_anchor_ = p->sf(anchor_);
    const double in_right = p->exp_integral(-kappa_, -num::kInf, num::kInf);
    const double atom = 1.0 - p->sf(0.0);
    p_atom_ = in_right > 0.0 ? atom / in_right : 0.0;
  }
}

double LogASampler::draw_kappa(Rng& rng) const { return law_.fkappa.quantile(rng.uniform()); }

double LogASampler::draw_p(Rng& rng) const {
  if (p_left_ > 0.0 && rng.uniform() < p_left_) return draw_left_tilted(rng);
  return draw_right_tilted(rng);
}

double LogASampler::draw_left_tilted(Rng& rng) const {
  return std::visit(
      [&](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ReflectedExpLeft>)
          return -rng.exponential() / (l.rate - kappa_);
        else if constexpr (std::is_same_v<T, PointMassLeft>)
          return l.location;
        else
          return 0.0;
      },
      law_.fkappa.left());
}

double LogASampler::draw_right_tilted(Rng& rng) const {
  const double k = kappa_;
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ParetoRight>) {
          if (p_atom_ > 0.0 && rng.uniform() < p_atom_) return 0.0;
          for (;;) {
            const double y = std::max(0.0, std::pow(r.c / (rng.uniform() * sf_anchor_), 1.0 / r.alpha) - r.x0);
            if (rng.uniform() < std::exp(-k * (y - anchor_))) return y;
          }
        } else if constexpr (std::is_same_v<T, LognormalRight> || std::is_same_v<T, WeibullRight>) {
          for (;;) {
            const double y = r.isf(rng.uniform());
            if (rng.uniform() < std::exp(-k * y)) return y;
          }
        } else if constexpr (std::is_same_v<T, ExponentialRight>) {
          return rng.exponential() / (r.rate + k);
        } else if constexpr (std::is_same_v<T, NormalLaw>) {
          return r.mean - k * r.sd * r.sd + r.sd * rng.normal();
        } else {
          return r.location;
        }
      },
      law_.fkappa.right());
}

}  // namespace perptail
