#include "perptail/common/parallel.hpp"

#include <numbers>

#include <omp.h>

namespace perptail {

Rng::Rng(std::uint64_t seed, std::uint64_t stream, Salt salt) {
  const auto s = static_cast<std::uint64_t>(salt);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  engine_.seed(seq);
}

double Rng::normal() {
  // Box-Muller, cosine branch only so every call consumes exactly two words.
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  return r * std::cos(2.0 * std::numbers::pi * uniform());
}

std::vector<Block> make_blocks(std::size_t n, std::size_t count) {
  if (count == 0) count = 1;
  std::vector<Block> out;
  out.reserve(count);
  for (std::size_t b = 0; b < count; ++b) {
    const std::size_t begin = n * b / count;
    const std::size_t end = n * (b + 1) / count;
    out.push_back({b, begin, end});
  }
  return out;
}

void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace perptail
