#include "perptail/sampler/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "perptail/common/error.hpp"

namespace perptail {

void SimConfig::validate() const {
  if (n_paths == 0) fail(ErrorCode::ConfigInvalid, "n_paths must be positive");
  if (!(trunc_eps > 0.0 && trunc_eps < 1.0)) fail(ErrorCode::ConfigInvalid, "trunc_eps must lie in (0,1)");
  if (max_horizon < 1) fail(ErrorCode::ConfigInvalid, "max_horizon must be at least 1");
  if (stream_count < 1) fail(ErrorCode::ConfigInvalid, "stream_count must be at least 1");
}

std::vector<double> sample_log_a(const TiltedLaw& law, Measure measure, std::size_t n, std::uint64_t seed,
                                 std::size_t stream_count, Exec exec) {
  LogASampler s(law);
  std::vector<double> out(n);
  for_blocks(make_blocks(n, stream_count), exec, [&](const Block& b) {
    Rng rng(seed, b.index, Salt::LogA);
    for (std::size_t i = b.begin; i < b.end; ++i) out[i] = s.draw(rng, measure);
  });
  return out;
}

namespace {

void require_contracting(const TiltedLaw& law) {
  const double mean = law.mean_log_a();
  if (!(mean < 0.0)) fail(ErrorCode::NotContracting, "E log A = " + std::to_string(mean) + " is not negative");
}

// Shared driver for the two perpetuity flavours; `fold` combines the running
// value with B_k * prod_{i<k} A_i.
template <class Fold>
PerpetuitySample run_paths(const ALaw& a, const BLaw& b, const SimConfig& cfg, Salt salt, Fold fold) {
  cfg.validate();
  std::optional<LogASampler> s;
  if (const auto* law = std::get_if<TiltedLaw>(&a)) {
    require_contracting(*law);
    if (!b.coupled()) b.validate(law->kappa);
    s.emplace(*law);
  }
  PerpetuitySample out;
  out.config = cfg;
  out.draws.resize(cfg.n_paths);
  const double log_eps = std::log(cfg.trunc_eps);
  const auto blocks = make_blocks(cfg.n_paths, cfg.stream_count);
  const std::size_t truncated = reduce_blocks(
      blocks, cfg.exec, std::size_t{0},
      [&](const Block& blk) {
        Rng rng(cfg.seed, blk.index, salt);
        std::size_t cut = 0;
        for (std::size_t i = blk.begin; i < blk.end; ++i) {
          if (!s) {
            out.draws[i] = b.sample(rng, -num::kInf);
            continue;
          }
          double x = 0.0;
          bool first = true;
          double log_prod = 0.0;
          std::size_t k = 0;
          for (; k < cfg.max_horizon; ++k) {
            const double la = s->draw_p(rng);
            const double bk = b.sample(rng, la);
            const double term = bk * std::exp(log_prod);
            x = first ? term : fold(x, term);
            first = false;
            log_prod += la;
            if (log_prod < log_eps) break;
          }
          if (k == cfg.max_horizon) ++cut;
          out.draws[i] = x;
        }
        return cut;
      },
      [](std::size_t acc, std::size_t v) { return acc + v; });
  out.truncated_fraction = static_cast<double>(truncated) / static_cast<double>(cfg.n_paths);
  if (out.truncated_fraction > 1e-3)
    fail(ErrorCode::TruncationNotConverged,
         "truncated fraction " + std::to_string(out.truncated_fraction) + " exceeds 1e-3; raise max_horizon");
  return out;
}

}  // namespace

PerpetuitySample sample_perpetuity(const ALaw& a, const BLaw& b, const SimConfig& cfg) {
  return run_paths(a, b, cfg, Salt::Perpetuity, [](double x, double term) { return x + term; });
}

PerpetuitySample sample_max_perpetuity(const ALaw& a, const BLaw& b, const SimConfig& cfg) {
  if (!b.nonnegative()) fail(ErrorCode::InvalidModel, "the max equation needs B >= 0");
  return run_paths(a, b, cfg, Salt::MaxPerpetuity, [](double x, double term) { return std::max(x, term); });
}

PerpetuitySample sample_max_rw(const TiltedLaw& law, const SimConfig& cfg) {
  cfg.validate();
  require_contracting(law);
  LogASampler s(law);
  const double barrier = -std::log(cfg.trunc_eps);
  PerpetuitySample out;
  out.config = cfg;
  out.draws.resize(cfg.n_paths);
  const std::size_t truncated = reduce_blocks(
      make_blocks(cfg.n_paths, cfg.stream_count), cfg.exec, std::size_t{0},
      [&](const Block& blk) {
        Rng rng(cfg.seed, blk.index, Salt::MaxWalk);
        std::size_t cut = 0;
        for (std::size_t i = blk.begin; i < blk.end; ++i) {
          double walk = 0.0;
          double top = 0.0;
          std::size_t k = 0;
          for (; k < cfg.max_horizon; ++k) {
            walk += s.draw_p(rng);
            top = std::max(top, walk);
            if (walk < -barrier) break;
          }
          if (k == cfg.max_horizon) ++cut;
          out.draws[i] = top;
        }
        return cut;
      },
      [](std::size_t acc, std::size_t v) { return acc + v; });
  out.truncated_fraction = static_cast<double>(truncated) / static_cast<double>(cfg.n_paths);
  if (out.truncated_fraction > 1e-3)
    fail(ErrorCode::TruncationNotConverged, "walk did not cross the barrier within max_horizon");
  return out;
}

namespace {
struct Moments2 {
  double sum = 0.0;
  double sumsq = 0.0;
  std::size_t n = 0;
};
Moments2 merge(Moments2 a, const Moments2& b) {
  a.sum += b.sum;
  a.sumsq += b.sumsq;
  a.n += b.n;
  return a;
}
double variance(const Moments2& m) {
  if (m.n < 2) return 0.0;
  const double n = static_cast<double>(m.n);
  const double mean = m.sum / n;
  return std::max(0.0, (m.sumsq - n * mean * mean) / (n - 1.0));
}
}  // namespace

ISEstimate is_tail_max_rw(const TiltedLaw& law, double x, const SimConfig& cfg) {
  cfg.validate();
  if (!law.critical()) fail(ErrorCode::CaseMismatch, "importance sampling of M needs theta = 1");
  if (!(x > 0.0)) fail(ErrorCode::InvalidModel, "level x must be positive");
  LogASampler s(law);
  const double k = law.kappa;
  const auto blocks = make_blocks(cfg.n_paths, cfg.stream_count);
  std::vector<Moments2> parts(blocks.size());
  std::vector<char> hit_horizon(blocks.size(), 0);
  for_blocks(blocks, cfg.exec, [&](const Block& blk) {
    Rng rng(cfg.seed, blk.index, Salt::ImportanceWalk);
    Moments2 m;
    for (std::size_t i = blk.begin; i < blk.end; ++i) {
      double walk = 0.0;
      std::size_t step = 0;
      while (walk <= x && step < cfg.max_horizon) {
        walk += s.draw_kappa(rng);
        ++step;
      }
      if (walk <= x) {
        hit_horizon[blk.index] = 1;
        break;
      }
      const double w = std::exp(-k * (walk - x));
      m.sum += w;
      m.sumsq += w * w;
      ++m.n;
    }
    parts[blk.index] = m;
  });
  if (std::find(hit_horizon.begin(), hit_horizon.end(), 1) != hit_horizon.end())
    fail(ErrorCode::HorizonExceeded, "first passage not reached within max_horizon");
  Moments2 tot;
  for (const auto& p : parts) tot = merge(tot, p);
  const double n = static_cast<double>(tot.n);
  const double scaled = tot.sum / n;
  const double hw = 1.96 * std::sqrt(variance(tot) / n);
  const double damp = std::exp(-k * x);
  ISEstimate out;
  out.x = x;
  out.estimate = scaled * damp;
  out.ci = {std::max(0.0, (scaled - hw) * damp), (scaled + hw) * damp};
  out.scaled = scaled;
  out.scaled_half_width = hw;
  out.n = tot.n;
  return out;
}

GoldieEstimate estimate_goldie_constant(const PerpetuitySample& xs, const ALaw& a, const BLaw& b, double kappa,
                                        std::size_t n_pairs, std::uint64_t seed, GoldieVariant variant,
                                        std::size_t stream_count, Exec exec) {
  if (xs.draws.empty()) fail(ErrorCode::EmptySample, "no X draws to pair with");
  if (n_pairs < 2) fail(ErrorCode::InvalidModel, "need at least two pairs");
  if (variant == GoldieVariant::Max && !b.nonnegative() && !b.coupled())
    fail(ErrorCode::InvalidModel, "max variant needs B >= 0");
  std::optional<LogASampler> s;
  if (const auto* law = std::get_if<TiltedLaw>(&a)) s.emplace(*law);
  // Checkpoints fall on block boundaries: 16 * 2^j blocks.
  const std::size_t nb = std::max<std::size_t>(16, (stream_count + 15) / 16 * 16);
  const auto blocks = make_blocks(n_pairs, nb);
  std::vector<Moments2> parts(blocks.size());
  const std::size_t nx = xs.draws.size();
  auto pos = [kappa](double v) { return v > 0.0 ? std::pow(v, kappa) : 0.0; };
  for_blocks(blocks, exec, [&](const Block& blk) {
    Rng rng(seed, blk.index, Salt::Goldie);
    Moments2 m;
    for (std::size_t i = blk.begin; i < blk.end; ++i) {
      const double la = s ? s->draw_p(rng) : -num::kInf;
      const double bb = b.sample(rng, la);
      const double x = xs.draws[rng.index(nx)];
      const double ax = s ? std::exp(la) * x : 0.0;
      double d = 0.0;
      switch (variant) {
        case GoldieVariant::Plus: d = pos(ax + bb) - pos(ax); break;
        case GoldieVariant::Minus: d = pos(-(ax + bb)) - pos(-ax); break;
        case GoldieVariant::Max: {
          const double axp = std::max(ax, 0.0);
          d = pos(std::max(axp, std::max(bb, 0.0))) - pos(axp);
          break;
        }
      }
      m.sum += d;
      m.sumsq += d * d;
      ++m.n;
    }
    parts[blk.index] = m;
  });
  GoldieEstimate out;
  Moments2 tot;
  std::size_t next = nb / 16;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    tot = merge(tot, parts[i]);
    if (i + 1 == next) {
      out.variance_ladder.push_back(variance(tot));
      next *= 2;
    }
  }
  const double n = static_cast<double>(tot.n);
  out.estimate = tot.sum / n;
  out.half_width = 1.96 * std::sqrt(variance(tot) / n);
  out.n_pairs = tot.n;
  if (n_pairs / 16 >= 1000) {
    int streak = 0;
    for (std::size_t i = 1; i < out.variance_ladder.size(); ++i) {
      const double prev = out.variance_ladder[i - 1];
      streak = (prev > 0.0 && out.variance_ladder[i] > 1.3 * prev) ? streak + 1 : 0;
      if (streak >= 2)
        fail(ErrorCode::InsufficientMoment, "variance keeps growing as pairs double; the moment may not exist");
    }
  }
  return out;
}

}  // namespace perptail
