#pragma once

#include <cstddef>
#include <cstdint>
#include <cmath>
#include <random>
#include <vector>

namespace perptail {

enum class Exec { Serial, Parallel };

// Operation salts keep substreams of different operations apart for the same
// (seed, stream) pair.
enum class Salt : std::uint64_t {
  LogA = 1,
  Perpetuity = 2,
  MaxPerpetuity = 3,
  MaxWalk = 4,
  ImportanceWalk = 5,
  Goldie = 6,
  Psi = 7,
  Test = 99,
};

// Per-block generator: mt19937_64 keyed by (seed, stream, salt).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream, Salt salt);

  std::uint64_t bits() { return engine_(); }
  // Uniform on the open interval (0, 1), 53 random bits.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  double exponential() { return -std::log(uniform()); }
  double normal();
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

struct Block {
  std::size_t index;
  std::size_t begin;
  std::size_t end;
};

// Splits [0, n) into `count` contiguous blocks. Block boundaries depend only
// on (n, count), never on the thread count.
std::vector<Block> make_blocks(std::size_t n, std::size_t count);

// Runs body(block) for every block. The body must only write state owned by
// its block; results are then independent of the execution mode.
template <class Body>
void for_blocks(const std::vector<Block>& blocks, Exec exec, Body&& body) {
  const auto nb = static_cast<std::ptrdiff_t>(blocks.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < nb; ++b) body(blocks[static_cast<std::size_t>(b)]);
  } else {
    for (std::ptrdiff_t b = 0; b < nb; ++b) body(blocks[static_cast<std::size_t>(b)]);
  }
}

// Map each block to a partial result, then fold the partials in block order.
template <class T, class Map, class Fold>
T reduce_blocks(const std::vector<Block>& blocks, Exec exec, T init, Map&& map, Fold&& fold) {
  std::vector<T> partial(blocks.size());
  for_blocks(blocks, exec, [&](const Block& b) { partial[b.index] = map(b); });
  for (auto& p : partial) init = fold(std::move(init), std::move(p));
  return init;
}

void set_thread_count(int n);
int thread_count();

}  // namespace perptail
