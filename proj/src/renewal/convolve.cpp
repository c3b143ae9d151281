#include "perptail/renewal/convolve.hpp"

#include <algorithm>
#include <xmmintrin.h>

#include "perptail/common/error.hpp"

namespace perptail {

namespace {

// Flush denormals inside the kernel: far tails of convolution powers would
// otherwise crawl through subnormal arithmetic. Set the same way in every
// execution mode so results stay bitwise identical.
class FlushDenormals {
 public:
  FlushDenormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040); }
  ~FlushDenormals() { _mm_setcsr(saved_); }
  FlushDenormals(const FlushDenormals&) = delete;
  FlushDenormals& operator=(const FlushDenormals&) = delete;

 private:
  unsigned saved_;
};

[[gnu::noinline]] double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
#pragma omp simd reduction(+ : s)
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Index range of nonzero entries; empty range as (1, 0).
std::pair<std::size_t, std::size_t> support(const std::vector<double>& v) {
  std::size_t lo = 0;
  while (lo < v.size() && v[lo] == 0.0) ++lo;
  if (lo == v.size()) return {1, 0};
  std::size_t hi = v.size() - 1;
  while (v[hi] == 0.0) --hi;
  return {lo, hi};
}

// Orders the operands canonically so that a * b and b * a run the same
// arithmetic.
bool before(const GridFn& a, const GridFn& b) {
  if (a.kind != b.kind) return a.kind == GridKind::Pointwise;
  if (a.size() != b.size()) return a.size() > b.size();
  if (a.first != b.first) return a.first < b.first;
  return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(), b.values.end());
}

}  // namespace

GridFn convolve(const GridFn& a_in, const GridFn& b_in, std::int64_t lo, std::int64_t hi, Exec exec) {
  if (a_in.h != b_in.h) fail(ErrorCode::StepMismatch, "convolution needs equal grid steps");
  if (a_in.kind == GridKind::Pointwise && b_in.kind == GridKind::Pointwise)
    fail(ErrorCode::InvalidModel, "at least one convolution operand must be a mass grid");
  const bool swap = !before(a_in, b_in) && (before(b_in, a_in));
  const GridFn& a = swap ? b_in : a_in;
  const GridFn& b = swap ? a_in : b_in;

  GridFn out;
  out.h = a.h;
  out.first = lo;
  out.kind = (a.kind == GridKind::Pointwise || b.kind == GridKind::Pointwise) ? GridKind::Pointwise : GridKind::Mass;
  out.values.assign(static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo + 1)), 0.0);

  const auto [sa_lo, sa_hi] = support(a.values);
  const auto [sb_lo, sb_hi] = support(b.values);
  if (sa_lo <= sa_hi && sb_lo <= sb_hi && !out.values.empty()) {
    // Trimmed operands; b reversed so each output is a contiguous dot product.
    const std::vector<double> av(a.values.begin() + static_cast<std::ptrdiff_t>(sa_lo),
                                 a.values.begin() + static_cast<std::ptrdiff_t>(sa_hi) + 1);
    std::vector<double> br(b.values.begin() + static_cast<std::ptrdiff_t>(sb_lo),
                           b.values.begin() + static_cast<std::ptrdiff_t>(sb_hi) + 1);
    std::reverse(br.begin(), br.end());
    const auto la = static_cast<std::int64_t>(av.size());
    const auto lb = static_cast<std::int64_t>(br.size());
    const std::int64_t base = a.first + static_cast<std::int64_t>(sa_lo) + b.first + static_cast<std::int64_t>(sb_lo);
    const std::int64_t k_lo = std::max(lo, base);
    const std::int64_t k_hi = std::min(hi, base + la + lb - 2);
    auto cell = [&](std::int64_t k) {
      const std::int64_t kk = k - base;
      const std::int64_t i0 = std::max<std::int64_t>(0, kk - (lb - 1));
      const std::int64_t i1 = std::min(la - 1, kk);
      if (i1 < i0) return 0.0;
      return dot(av.data() + i0, br.data() + (lb - 1 - kk + i0), static_cast<std::size_t>(i1 - i0 + 1));
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel
      {
        FlushDenormals guard;
#pragma omp for schedule(static, 256)
        for (std::int64_t k = k_lo; k <= k_hi; ++k) out.values[static_cast<std::size_t>(k - lo)] = cell(k);
      }
    } else {
      FlushDenormals guard;
      for (std::int64_t k = k_lo; k <= k_hi; ++k) out.values[static_cast<std::size_t>(k - lo)] = cell(k);
    }
  }
  if (out.kind == GridKind::Mass) {
    double inside = 0.0;
    for (double v : out.values) inside += v;
    double ma = 0.0;
    double mb = 0.0;
    for (double v : a.values) ma += v;
    for (double v : b.values) mb += v;
    out.deficit = std::max(0.0, (ma + a.deficit) * (mb + b.deficit) - inside);
  }
  return out;
}

GridFn convolve(const GridFn& a, const GridFn& b, Exec exec) {
  return convolve(a, b, a.first + b.first, a.last() + b.last(), exec);
}

}  // namespace perptail
