#include "perptail/renewal/renewal_table.hpp"

#include <cmath>

#include "perptail/common/error.hpp"

namespace perptail {

double RenewalTable::increment(double x, double w) const {
  const double h = u.h;
  // Nodes x_k with x < x_k <= x + w.
  const auto k0 = static_cast<std::int64_t>(std::floor(x / h + 1e-9)) + 1;
  const auto k1 = static_cast<std::int64_t>(std::floor((x + w) / h + 1e-9));
  double s = 0.0;
  for (std::int64_t k = k0; k <= k1; ++k) s += u.at_index(k);
  return s;
}

namespace {

GridFn scaled(GridFn g, double c) {
  for (double& v : g.values) v *= c;
  g.deficit *= c;
  return g;
}

GridFn add(const GridFn& a, const GridFn& b) {
  GridFn out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
  out.deficit += b.deficit;
  return out;
}

// Mass of a term: in-window plus what is known to have left the window.
double full_mass(const GridFn& g) { return g.total() + g.deficit; }

}  // namespace

RenewalTable renewal_increments(const GridFn& fk, const RenewalConfig& cfg) {
  if (fk.kind != GridKind::Mass) fail(ErrorCode::InvalidModel, "renewal needs a mass grid");
  if (!(cfg.theta > 0.0 && cfg.theta <= 1.0)) fail(ErrorCode::InvalidModel, "theta must lie in (0,1]");
  const std::int64_t lo = fk.first;
  const std::int64_t hi = fk.last();
  if (lo > 0 || hi < 0) fail(ErrorCode::InvalidModel, "renewal window must contain 0");
  const bool critical = cfg.theta == 1.0;
  auto measure = [critical](const GridFn& term) { return critical ? term.total() : full_mass(term); };

  GridFn delta{fk.h, lo, std::vector<double>(fk.size(), 0.0), GridKind::Mass, 0.0};
  delta.values[static_cast<std::size_t>(-lo)] = 1.0;
  // F restricted to the window; its deficit is the law's mass outside.
  const GridFn f = fk;

  RenewalTable t;
  t.theta = cfg.theta;
  if (cfg.algorithm == RenewalAlgorithm::Sequential) {
    GridFn u = delta;
    GridFn power = delta;  // theta^n F^{*n}
    std::size_t n = 1;
    double contrib = 0.0;
    for (; n <= cfg.n_max; ++n) {
      power = scaled(convolve(power, f, lo, hi, cfg.exec), cfg.theta);
      u = add(u, power);
      contrib = measure(power);
      if (contrib < cfg.tol) break;
    }
    if (n > cfg.n_max)
      fail(ErrorCode::TruncationNotConverged,
           "renewal series still contributes " + std::to_string(contrib) + " after n_max terms");
    t.u = std::move(u);
    t.n_terms = std::min(n, cfg.n_max) + 1;
    t.last_contribution = contrib;
  } else {
    // u holds sum_{n<m} theta^n F^{*n}, power holds theta^m F^{*m}.
    GridFn u = delta;
    GridFn power = scaled(f, cfg.theta);
    std::size_t m = 1;
    double contrib = 0.0;
    for (;;) {
      GridFn term = convolve(power, u, lo, hi, cfg.exec);
      u = add(u, term);
      contrib = measure(term);
      m *= 2;
      if (contrib < cfg.tol) break;
      if (m >= cfg.n_max)
        fail(ErrorCode::TruncationNotConverged,
             "renewal series still contributes " + std::to_string(contrib) + " after n_max terms");
      power = convolve(power, power, lo, hi, cfg.exec);
    }
    t.u = std::move(u);
    t.n_terms = m;
    t.last_contribution = contrib;
  }
  t.mass_deficit = t.u.deficit;
  return t;
}

void attach_spec(RenewalTable& table, const TailSpec& spec) {
  table.m_values.assign(table.u.size(), 0.0);
  for (std::size_t i = 0; i < table.u.size(); ++i) {
    const double x = table.u.x(i);
    table.m_values[i] = x > 0.0 ? spec.truncated_mean(x) : 0.0;
  }
  const auto alpha = spec.rv_index();
  table.c_alpha = alpha ? num::c_alpha(*alpha) : 1.0;
}

SrtReport srt_check(const RenewalTable& table, const TailSpec& spec, double h, const std::vector<double>& ladder) {
  if (table.theta != 1.0) fail(ErrorCode::CaseMismatch, "the strong renewal theorem concerns theta = 1");
  SrtReport rep;
  const auto alpha = spec.rv_index();
  rep.c_alpha = alpha ? num::c_alpha(*alpha) : 1.0;
  for (double x : ladder) {
    SrtRow r;
    r.x = x;
    r.m = spec.truncated_mean(x);
    r.increment = table.increment(x, h);
    r.ratio = r.m * r.increment / (h * rep.c_alpha);
    rep.rows.push_back(r);
  }
  rep.last_ratio = rep.rows.empty() ? 0.0 : rep.rows.back().ratio;
  rep.monotone_last_decade = true;
  if (!rep.rows.empty()) {
    const double start = rep.rows.back().x / 10.0;
    double prev = num::kInf;
    for (const auto& r : rep.rows) {
      if (r.x < start * (1.0 - 1e-12)) continue;
      const double err = std::abs(r.ratio - 1.0);
      if (err > prev + 1e-12) rep.monotone_last_decade = false;
      prev = err;
    }
  }
  return rep;
}

}  // namespace perptail
