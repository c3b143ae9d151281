#pragma once

#include <cstdint>
#include <vector>

#include "perptail/common/numerics.hpp"
#include "perptail/model/blaw.hpp"
#include "perptail/sampler/log_a_sampler.hpp"

namespace perptail {

struct SimConfig {
  std::uint64_t seed = 1;
  std::size_t n_paths = 100000;
  // A path stops once prod A_i < trunc_eps.
  double trunc_eps = 1e-12;
  std::size_t max_horizon = 100000;
  // Number of path blocks, each with its own substream.
  std::size_t stream_count = 64;
  Exec exec = Exec::Parallel;

  void validate() const;
};

struct PerpetuitySample {
  std::vector<double> draws;
  // Fraction of paths stopped by max_horizon instead of trunc_eps.
  double truncated_fraction = 0.0;
  SimConfig config;
};

std::vector<double> sample_log_a(const TiltedLaw& law, Measure measure, std::size_t n, std::uint64_t seed,
                                 std::size_t stream_count = 64, Exec exec = Exec::Parallel);

// X = sum_k B_k prod_{i<k} A_i.
PerpetuitySample sample_perpetuity(const ALaw& a, const BLaw& b, const SimConfig& cfg);
// X = max_k B_k prod_{i<k} A_i, B >= 0.
PerpetuitySample sample_max_perpetuity(const ALaw& a, const BLaw& b, const SimConfig& cfg);
// M = max(0, S_1, S_2, ...), walk stopped below -log(1/trunc_eps).
PerpetuitySample sample_max_rw(const TiltedLaw& law, const SimConfig& cfg);

struct ISEstimate {
  double x;
  double estimate;
  num::Interval ci;
  // e^{kappa x} * estimate = mean of e^{-kappa (S_tau - x)}.
  double scaled;
  double scaled_half_width;
  std::size_t n;
};

// P{M > x} by simulating the walk under P_kappa up to its first passage above x.
ISEstimate is_tail_max_rw(const TiltedLaw& law, double x, const SimConfig& cfg);

enum class GoldieVariant { Plus, Minus, Max };

struct GoldieEstimate {
  double estimate;
  double half_width;
  std::size_t n_pairs;
  // Sample variance at n/16, n/8, n/4, n/2, n pairs.
  std::vector<double> variance_ladder;
};

// Mean of (AX+B)_+^k - (AX)_+^k (Plus), the same with negative parts (Minus),
// or (AX_+ v B_+)^k - (AX_+)^k (Max), with fresh (A,B) and resampled X.
GoldieEstimate estimate_goldie_constant(const PerpetuitySample& x, const ALaw& a, const BLaw& b, double kappa,
                                        std::size_t n_pairs, std::uint64_t seed, GoldieVariant variant,
                                        std::size_t stream_count = 64, Exec exec = Exec::Parallel);

}  // namespace perptail
