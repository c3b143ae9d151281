#include "perptail/renewal/key_renewal.hpp"

#include "perptail/common/error.hpp"

namespace perptail {

double local_window_g(const TailSpec& spec, double x) { return std::max(0.0, spec.window_mass(x, 1.0)); }

namespace {

void check_normalizer(const RenewalTable& table, Normalizer normalizer, const TailSpec* spec) {
  if (normalizer == Normalizer::None) return;
  if (!spec) fail(ErrorCode::NormalizerMismatch, "normalizer needs the tail spec");
  if (normalizer == Normalizer::MOfX && table.theta != 1.0)
    fail(ErrorCode::NormalizerMismatch, "m(x) normalization belongs to theta = 1");
  if (normalizer == Normalizer::GWindow && table.theta == 1.0)
    fail(ErrorCode::NormalizerMismatch, "g-window normalization belongs to theta < 1");
}

}  // namespace

GridFn key_renewal_convolve(const GridFn& z, const RenewalTable& table, Normalizer normalizer, const TailSpec* spec,
                            Exec exec) {
  if (z.kind != GridKind::Pointwise) fail(ErrorCode::InvalidModel, "z must be a pointwise grid");
  check_normalizer(table, normalizer, spec);
  GridFn out = convolve(z, table.u, table.u.first, table.u.last(), exec);
  if (normalizer == Normalizer::None) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = out.x(i);
    if (normalizer == Normalizer::MOfX) {
      out.values[i] *= x > 0.0 ? spec->truncated_mean(x) : 0.0;
    } else {
      const double g = local_window_g(*spec, x);
      out.values[i] = g > 0.0 ? out.values[i] / g : 0.0;
    }
  }
  return out;
}

double key_renewal_limit(const GridFn& z, const RenewalTable& table, Normalizer normalizer) {
  double integral = 0.0;
  for (double v : z.values) integral += v;
  integral *= z.h;
  switch (normalizer) {
    case Normalizer::MOfX: return table.c_alpha * integral;
    case Normalizer::GWindow: return table.theta * integral / ((1.0 - table.theta) * (1.0 - table.theta));
    case Normalizer::None: return 0.0;
  }
  return 0.0;
}

}  // namespace perptail
