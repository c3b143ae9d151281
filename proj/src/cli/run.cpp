#include "perptail/cli/run.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "perptail/common/csv.hpp"
#include "perptail/common/error.hpp"
#include "perptail/counterexample/counterexample.hpp"
#include "perptail/diagnostics/doney.hpp"
#include "perptail/diagnostics/slowvary.hpp"
#include "perptail/diagnostics/subexp.hpp"
#include "perptail/renewal/implicit_renewal.hpp"
#include "perptail/renewal/renewal_table.hpp"
#include "perptail/sampler/sampler.hpp"
#include "perptail/sampler/tail_estimate.hpp"

namespace perptail {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kCommands = {"solve-kappa",    "build-model",     "simulate",      "tail-table",
                                            "goldie-constant", "renewal-check",  "srt-check",     "implicit-check",
                                            "doney-check",     "subexp-check",   "counterexample"};

[[noreturn]] void invalid(const std::string& what) { fail(ErrorCode::ConfigInvalid, what); }

std::vector<std::string> check_keys(const std::string& command) {
  if (command == "solve-kappa") return {"tol"};
  if (command == "build-model") return {"x_lo", "x_hi", "points", "tol"};
  if (command == "simulate") return {"kind", "thresholds"};
  if (command == "tail-table") return {"kind", "thresholds", "mode", "min_exceedances", "slope_tol", "expect"};
  if (command == "goldie-constant") return {"n_pairs", "variant", "expected", "sigmas", "slack"};
  if (command == "renewal-check") return {"theta", "x", "width", "lo", "hi", "mass_tol"};
  if (command == "srt-check") return {"ladder", "lo", "hi"};
  if (command == "implicit-check") return {"max_rel_gap", "min_exceedances"};
  if (command == "doney-check") return {"x_ladder", "delta_ladder", "expect"};
  if (command == "subexp-check") return {"T", "x_ladder", "tol", "growth_bound", "expect", "growth_expect"};
  return {"alpha", "beta", "n_max", "h", "x_max", "clip", "slope_tol"};
}

bool needs_model(const std::string& command) { return command != "counterexample"; }

bool may_use_sim(const std::string& command) {
  return command == "simulate" || command == "tail-table" || command == "goldie-constant" ||
         command == "implicit-check";
}

bool may_use_grid(const std::string& command) {
  return command == "renewal-check" || command == "srt-check" || command == "implicit-check";
}

SimConfig sim_from_json(const Json& j) {
  const std::string w = "sim";
  require_object(j, w, {"seed", "n_paths", "trunc_eps", "max_horizon", "stream_count", "exec"});
  SimConfig c;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) invalid("sim.seed: expected a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  c.n_paths = static_cast<std::size_t>(json_number(j, "n_paths", w, static_cast<double>(c.n_paths)));
  c.trunc_eps = json_number(j, "trunc_eps", w, c.trunc_eps);
  c.max_horizon = static_cast<std::size_t>(json_number(j, "max_horizon", w, static_cast<double>(c.max_horizon)));
  c.stream_count = static_cast<std::size_t>(json_number(j, "stream_count", w, static_cast<double>(c.stream_count)));
  const std::string exec = json_string(j, "exec", w, "parallel");
  if (exec != "parallel" && exec != "serial") invalid("sim.exec: expected 'parallel' or 'serial'");
  c.exec = exec == "serial" ? Exec::Serial : Exec::Parallel;
  c.validate();
  return c;
}

std::vector<double> ladder_from_json(const Json& j, const std::string& key, const std::string& where,
                                     std::vector<double> fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_array()) return json_numbers(j, key, where);
  const std::string w = where + "." + key;
  require_object(v, w, {"lo", "hi", "per_decade"});
  const double lo = json_number(v, "lo", w);
  const double hi = json_number(v, "hi", w);
  const double pd = json_number(v, "per_decade", w, 5.0);
  if (!(lo > 0.0 && hi > lo && pd >= 1.0)) invalid(w + ": need 0 < lo < hi and per_decade >= 1");
  return geometric_ladder(lo, hi, static_cast<int>(pd));
}

Verdict expected_verdict(const Json& check, const std::string& where, const std::string& key = "expect") {
  const std::string e = json_string(check, key, where, "consistent");
  if (e == "consistent") return Verdict::Consistent;
  if (e == "inconsistent") return Verdict::Inconsistent;
  invalid(where + "." + key + ": expected 'consistent' or 'inconsistent'");
}

Status from_verdict(Verdict got, Verdict want) {
  if (got == Verdict::Inconclusive) return Status::Inconclusive;
  return got == want ? Status::Pass : Status::Fail;
}

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Context {
  Json config;
  std::string command;
  fs::path out_dir;
  std::optional<ModelDesc> model;
  std::optional<BLaw> blaw;
  SimConfig sim;
  Json check = Json::object();
  Json grid = Json::object();
  RunResult* result = nullptr;

  void emit(const std::string& name, const csv::Table& table) {
    const fs::path p = out_dir / name;
    csv::write_atomic(p, table.str());
    result->outputs.push_back(p);
  }

  void report(Status s, const std::string& check_name, const std::string& detail) {
    result->summary.push_back(to_string(s) + " " + check_name + ": " + detail);
    // Overall status: any FAIL wins, then INCONCLUSIVE, then PASS.
    if (result->summary.size() == 1 || s == Status::Fail ||
        (s == Status::Inconclusive && result->status == Status::Pass))
      result->status = s;
  }

  const TiltedLaw& law() const {
    if (!model || !model->law) invalid("model: command '" + command + "' needs a model with A structure");
    return *model->law;
  }

  const BLaw& b() const {
    if (!blaw) invalid("blaw: command '" + command + "' needs a B law (or a catalog model)");
    return *blaw;
  }

  double num(const std::string& key, double fallback) const { return json_number(check, key, "check", fallback); }
  double grid_num(const std::string& key, double fallback) const { return json_number(grid, key, "grid", fallback); }
};

std::string g(double v) { return csv::fmt(v); }

PerpetuitySample simulate_kind(const Context& c, const std::string& kind) {
  if (kind == "perpetuity") return sample_perpetuity(c.law(), c.b(), c.sim);
  if (kind == "max_perpetuity") return sample_max_perpetuity(c.law(), c.b(), c.sim);
  if (kind == "max_rw") return sample_max_rw(c.law(), c.sim);
  invalid("check.kind: expected perpetuity, max_perpetuity or max_rw");
}

csv::Table tail_table(const TailEstimate& est) {
  const bool norm = est.normalized.size() == est.thresholds.size();
  std::vector<std::string> header = {"threshold", "survival", "ci_lower", "ci_upper", "exceedances"};
  if (norm) header.push_back("normalized");
  csv::Table t(header);
  for (std::size_t i = 0; i < est.thresholds.size(); ++i) {
    std::vector<double> row = {est.thresholds[i], est.survival[i], est.ci_lower[i], est.ci_upper[i],
                               static_cast<double>(est.exceedances[i])};
    if (norm) row.push_back(est.normalized[i]);
    t.add(row);
  }
  return t;
}

void cmd_solve_kappa(Context& c) {
  if (!c.model->base) invalid("model: solve-kappa needs a base family");
  const double tol = c.num("tol", 1e-10);
  const double kappa = solve_kappa(*c.model->base, c.model->kappa_lo, c.model->kappa_hi);
  const double resid = std::expm1(log_moment(*c.model->base, kappa));
  csv::Table t({"kappa", "moment_minus_one"});
  t.add({kappa, resid});
  c.emit("kappa.csv", t);
  c.report(std::abs(resid) < tol ? Status::Pass : Status::Fail, "solve-kappa",
           "kappa=" + g(kappa) + " |E A^kappa - 1|=" + g(std::abs(resid)));
}

void cmd_build_model(Context& c) {
  const TiltedLaw& law = c.law();
  const double tol = c.num("tol", 1e-8);
  const double lo = c.num("x_lo", -10.0);
  const double hi = c.num("x_hi", 100.0);
  const auto points = static_cast<int>(c.num("points", 51));
  if (!(hi > lo) || points < 2) invalid("check: need x_hi > x_lo and points >= 2");
  csv::Table t({"x", "fkappa_df", "fkappa_sf", "base_df", "retilted_df"});
  double roundtrip = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double fk = law.fkappa.df(x);
    const double back = law.retilted_df(x);
    roundtrip = std::max(roundtrip, std::abs(back - fk));
    t.add({x, fk, law.fkappa.sf(x), law.base_df(x), back});
  }
  c.emit("model.csv", t);
  const double norm = law.theta * law.fkappa.exp_integral(-law.kappa);
  const CaseReport cr = check_case(law, c.blaw ? &*c.blaw : nullptr);
  csv::Table s({"kappa", "theta", "normalization", "roundtrip_error", "e_kappa_log_plus", "classical_kgg"});
  s.add({law.kappa, law.theta, norm, roundtrip, cr.e_kappa_log_plus.value, cr.classical_kgg ? 1.0 : 0.0});
  c.emit("model_summary.csv", s);
  const bool ok = std::abs(norm - 1.0) < tol && roundtrip < tol;
  c.report(ok ? Status::Pass : Status::Fail, "build-model",
           "case=" + to_string(law.tag.kind) + " theta=" + g(law.theta) + " |norm-1|=" + g(std::abs(norm - 1.0)) +
               " roundtrip=" + g(roundtrip));
}

void cmd_simulate(Context& c, bool fit) {
  const std::string kind = json_string(c.check, "kind", "check", "perpetuity");
  const PerpetuitySample x = simulate_kind(c, kind);
  const auto ladder = ladder_from_json(c.check, "thresholds", "check", geometric_ladder(1.0, 1e3, 5));
  TailEstimate est = tail_estimate(x.draws, ladder);
  if (!fit) {
    c.emit("tail.csv", tail_table(est));
    c.report(Status::Pass, "simulate",
             "n=" + std::to_string(x.draws.size()) + " truncated_fraction=" + g(x.truncated_fraction));
    return;
  }
  const std::string mode_s = json_string(c.check, "mode", "check", "case_ii");
  SlowvaryMode mode;
  if (mode_s == "case_i") mode = SlowvaryMode::CaseI;
  else if (mode_s == "case_ii") mode = SlowvaryMode::CaseII;
  else if (mode_s == "classical") mode = SlowvaryMode::Classical;
  else invalid("check.mode: expected case_i, case_ii or classical");
  SlowvaryConfig sc;
  sc.min_exceedances = static_cast<std::size_t>(c.num("min_exceedances", 200));
  sc.slope_tol = c.num("slope_tol", 0.05);
  const SlowvaryFit f = slowvary_fit(est, c.law(), mode, sc);
  c.emit("tail.csv", tail_table(est));
  csv::Table p({"plateau", "plateau_lower", "plateau_upper", "plateau_x", "slope"});
  p.add({f.plateau, f.plateau_lower, f.plateau_upper, f.plateau_x, f.report.slope});
  c.emit("plateau.csv", p);
  c.report(from_verdict(f.report.verdict, expected_verdict(c.check, "check")), "tail-table",
           summary_line(f.report) + " plateau=" + g(f.plateau) + " [" + g(f.plateau_lower) + ", " +
               g(f.plateau_upper) + "]");
}

double tail_constant(const TiltedLaw& law, double goldie) {
  switch (law.tag.kind) {
    case CaseKind::CaseI: return num::c_alpha(law.tag.alpha) * goldie / law.kappa;
    case CaseKind::CaseII: return law.theta * goldie / ((1.0 - law.theta) * (1.0 - law.theta) * law.kappa);
    case CaseKind::Classical: return goldie / (law.kappa * law.fkappa.expect([](double y) { return y; }));
    case CaseKind::Unclassified: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void cmd_goldie(Context& c) {
  const TiltedLaw& law = c.law();
  const auto n_pairs = static_cast<std::size_t>(c.num("n_pairs", 1e6));
  const std::string v = json_string(c.check, "variant", "check", "plus");
  GoldieVariant variant;
  if (v == "plus") variant = GoldieVariant::Plus;
  else if (v == "minus") variant = GoldieVariant::Minus;
  else if (v == "max") variant = GoldieVariant::Max;
  else invalid("check.variant: expected plus, minus or max");
  const PerpetuitySample x =
      variant == GoldieVariant::Max ? sample_max_perpetuity(law, c.b(), c.sim) : sample_perpetuity(law, c.b(), c.sim);
  const GoldieEstimate e = estimate_goldie_constant(x, law, c.b(), law.kappa, n_pairs, c.sim.seed + 1000003, variant,
                                                    c.sim.stream_count, c.sim.exec);
  const double tc = tail_constant(law, e.estimate);
  const double tc_hw = std::abs(tail_constant(law, e.half_width));
  csv::Table t({"estimate", "half_width", "n_pairs", "tail_constant", "tail_constant_half_width"});
  t.add({e.estimate, e.half_width, static_cast<double>(e.n_pairs), tc, tc_hw});
  c.emit("goldie.csv", t);
  const std::string detail = "variant=" + v + " C=" + g(e.estimate) + " +- " + g(e.half_width) +
                             " tail_constant=" + g(tc);
  if (c.check.contains("expected")) {
    const double want = c.num("expected", 0.0);
    const double slack = c.num("slack", 0.0);
    // half_width is a 95% half-width; compare in standard errors.
    const double se = e.half_width / 1.96;
    const bool ok = std::abs(e.estimate - want) <= c.num("sigmas", 3.0) * se + slack;
    c.report(ok ? Status::Pass : Status::Fail, "goldie-constant", detail + " expected=" + g(want));
  } else {
    c.report(Status::Inconclusive, "goldie-constant", detail + " (no expected value configured)");
  }
}

GridFn fkappa_grid(const Context& c, const TailSpec& spec) {
  return build_grid_df(spec, c.grid_num("x_min", -10.0), c.grid_num("x_max", 100.0), c.grid_num("h", 0.01));
}

RenewalConfig renewal_config(const Context& c, double theta) {
  RenewalConfig rc;
  rc.theta = theta;
  rc.n_max = static_cast<std::size_t>(c.grid_num("n_max", static_cast<double>(rc.n_max)));
  rc.tol = c.grid_num("tol", rc.tol);
  const std::string alg = json_string(c.grid, "algorithm", "grid", "doubling");
  if (alg != "doubling" && alg != "sequential") invalid("grid.algorithm: expected doubling or sequential");
  rc.algorithm = alg == "doubling" ? RenewalAlgorithm::Doubling : RenewalAlgorithm::Sequential;
  rc.exec = c.sim.exec;
  return rc;
}

csv::Table renewal_csv(const RenewalTable& t) {
  csv::Table out({"x", "u_cell"});
  for (std::size_t i = 0; i < t.u.size(); ++i) out.add({t.u.x(i), t.u.values[i]});
  return out;
}

void cmd_renewal(Context& c) {
  const TailSpec& spec = c.model->tail();
  const double theta = c.num("theta", c.model->law ? c.model->law->theta : 1.0);
  const RenewalTable table = renewal_increments(fkappa_grid(c, spec), renewal_config(c, theta));
  c.emit("renewal.csv", renewal_csv(table));
  if (theta < 1.0) {
    const double tol = c.num("mass_tol", 1e-6);
    const double want = 1.0 / (1.0 - theta);
    const double err = std::abs(table.total_mass() - want);
    c.report(err < tol ? Status::Pass : Status::Fail, "renewal-check",
             "total_mass=" + g(table.total_mass()) + " target=" + g(want) + " terms=" + std::to_string(table.n_terms));
    return;
  }
  const double x = c.num("x", 30.0);
  const double w = c.num("width", 1.0);
  const double inc = table.increment(x, w);
  const double mean = spec.expect([](double y) { return y; });
  if (!std::isfinite(mean) || !(mean > 0.0)) {
    c.report(Status::Inconclusive, "renewal-check", "infinite or nonpositive mean; use srt-check");
    return;
  }
  const double ratio = inc * mean / w;
  const bool ok = ratio >= c.num("lo", 0.98) && ratio <= c.num("hi", 1.02);
  c.report(ok ? Status::Pass : Status::Fail, "renewal-check",
           "mu [U(x+w)-U(x)]/w=" + g(ratio) + " at x=" + g(x));
}

void cmd_srt(Context& c) {
  const TailSpec& spec = c.model->tail();
  const double h = c.grid_num("h", 0.01);
  RenewalTable table = renewal_increments(fkappa_grid(c, spec), renewal_config(c, 1.0));
  const auto ladder = ladder_from_json(c.check, "ladder", "check", {10, 25, 50, 100, 150, 200, 250});
  const SrtReport r = srt_check(table, spec, h, ladder);
  csv::Table t({"x", "m", "increment", "ratio"});
  for (const auto& row : r.rows) t.add({row.x, row.m, row.increment, row.ratio});
  c.emit("srt.csv", t);
  const bool ok = r.last_ratio >= c.num("lo", 0.95) && r.last_ratio <= c.num("hi", 1.05) && r.monotone_last_decade;
  c.report(ok ? Status::Pass : Status::Fail, "srt-check",
           "last_ratio=" + g(r.last_ratio) + " monotone_last_decade=" + (r.monotone_last_decade ? "yes" : "no"));
}

void cmd_implicit(Context& c) {
  const TiltedLaw& law = c.law();
  const PerpetuitySample x = sample_perpetuity(law, c.b(), c.sim);
  ImplicitConfig ic;
  ic.h = c.grid_num("h", ic.h);
  ic.s_min = c.grid_num("s_min", ic.s_min);
  ic.s_max = c.grid_num("s_max", ic.s_max);
  ic.seed = c.sim.seed + 2000003;
  ic.min_exceedances = static_cast<std::size_t>(c.num("min_exceedances", 200));
  ic.exec = c.sim.exec;
  const ImplicitReport r = implicit_renewal_crosscheck(law, law.kappa, x, ic);
  csv::Table t({"s", "f_direct", "f_iterated", "normalized_direct", "normalized_iterated", "exceedances"});
  for (const auto& row : r.rows)
    t.add({row.s, row.f_direct, row.f_iterated, row.normalized_direct, row.normalized_iterated,
           static_cast<double>(row.exceedances)});
  c.emit("implicit.csv", t);
  const double tol = c.num("max_rel_gap", 0.1);
  c.report(r.max_rel_gap <= tol ? Status::Pass : Status::Fail, "implicit-check",
           "max_rel_gap=" + g(r.max_rel_gap) + " int_psi=" + g(r.int_psi) + " limit=" + g(r.limit));
}

void cmd_doney(Context& c) {
  const auto xs = ladder_from_json(c.check, "x_ladder", "check", kDoneyXs);
  const auto ds = ladder_from_json(c.check, "delta_ladder", "check", kDoneyDeltas);
  const SweepReport r = doney_sweep(c.model->tail(), xs, ds);
  c.emit("doney.csv", to_table(r));
  c.report(from_verdict(r.verdict, expected_verdict(c.check, "check")), "doney-check", summary_line(r));
}

void cmd_subexp(Context& c) {
  const double T = c.num("T", 1.0);
  const auto xs = ladder_from_json(c.check, "x_ladder", "check", kSubexpXs);
  SubexpConfig sc;
  sc.tol = c.num("tol", sc.tol);
  GrowthConfig gc;
  gc.bound = c.num("growth_bound", gc.bound);
  const Verdict want = expected_verdict(c.check, "check");
  const Verdict want_growth = expected_verdict(c.check, "check", "growth_expect");
  const SweepReport r = delta_subexp_check(c.model->tail(), T, xs, sc);
  const SweepReport gr = growth_check(c.model->tail(), T, xs, gc);
  c.emit("subexp.csv", to_table(r));
  c.emit("growth.csv", to_table(gr));
  c.report(from_verdict(r.verdict, want), "subexp-check", summary_line(r));
  c.report(from_verdict(gr.verdict, want_growth), "growth-check", summary_line(gr));
}

void cmd_counterexample(Context& c) {
  CounterexampleConfig cc;
  cc.alpha = c.num("alpha", cc.alpha);
  cc.beta = c.num("beta", cc.beta);
  cc.n_max = static_cast<int>(c.num("n_max", cc.n_max));
  cc.h = c.num("h", cc.h);
  cc.x_max = c.num("x_max", cc.x_max);
  cc.clip = c.num("clip", cc.clip);
  cc.exec = c.sim.exec;
  const double tol = c.num("slope_tol", 0.05);
  const CounterexampleReport r = counterexample_run(cc);
  c.emit("counterexample.csv", to_table(r));
  c.emit("doney.csv", to_table(r.doney));
  const bool ok = r.lower_increasing && r.lower_bound_holds &&
                  std::abs(r.slope_lower - r.predicted_slope) <= tol && r.slope_clipped <= 0.0;
  c.report(ok ? Status::Pass : Status::Fail, "counterexample",
           "slope_lower=" + g(r.slope_lower) + " predicted=" + g(r.predicted_slope) +
               " slope_clipped=" + g(r.slope_clipped) + " increasing=" + (r.lower_increasing ? "yes" : "no"));
}

void dispatch(Context& c) {
  const std::string& cmd = c.command;
  if (cmd == "solve-kappa") cmd_solve_kappa(c);
  else if (cmd == "build-model") cmd_build_model(c);
  else if (cmd == "simulate") cmd_simulate(c, false);
  else if (cmd == "tail-table") cmd_simulate(c, true);
  else if (cmd == "goldie-constant") cmd_goldie(c);
  else if (cmd == "renewal-check") cmd_renewal(c);
  else if (cmd == "srt-check") cmd_srt(c);
  else if (cmd == "implicit-check") cmd_implicit(c);
  else if (cmd == "doney-check") cmd_doney(c);
  else if (cmd == "subexp-check") cmd_subexp(c);
  else cmd_counterexample(c);
}

// Everything that can be checked without computing.
void load(Context& c, const RunOptions& opt) {
  const Json& j = c.config;
  require_object(j, "config", {"command", "model", "blaw", "sim", "grid", "check", "output_dir", "fail_on_inconclusive"});
  c.command = json_string(j, "command", "config");
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    invalid("config.command: unknown command '" + c.command + "'");
  if (opt.output_dir) c.out_dir = *opt.output_dir;
  else c.out_dir = json_string(j, "output_dir", "config", "out");
  if (j.contains("check")) {
    c.check = j.at("check");
    require_object(c.check, "check", check_keys(c.command));
  }
  if (j.contains("grid")) {
    if (!may_use_grid(c.command)) invalid("grid: not used by '" + c.command + "'");
    c.grid = j.at("grid");
    require_object(c.grid, "grid", {"h", "x_min", "x_max", "n_max", "tol", "algorithm", "s_min", "s_max"});
  }
  if (j.contains("sim")) {
    if (c.command == "solve-kappa" || c.command == "build-model" || c.command == "doney-check" ||
        c.command == "subexp-check")
      invalid("sim: not used by '" + c.command + "'");
    c.sim = sim_from_json(j.at("sim"));
  }
  if (opt.seed) c.sim.seed = *opt.seed;
  if (j.contains("blaw")) {
    if (!may_use_sim(c.command) && c.command != "build-model") invalid("blaw: not used by '" + c.command + "'");
    c.blaw = blaw_from_json(j.at("blaw"), "blaw");
  }
  if (needs_model(c.command)) {
    if (!j.contains("model")) invalid("config: command '" + c.command + "' needs a model");
    c.model = model_from_json(j.at("model"));
    if (!c.blaw && c.model->default_b) c.blaw = c.model->default_b;
  } else if (j.contains("model")) {
    invalid("model: not used by '" + c.command + "'");
  }
  if (c.blaw && c.model && c.model->law) c.blaw->validate(c.model->law->kappa);
}

void write_manifest(const Context& c, RunResult& r, const RunOptions& opt) {
  Json m;
  m["tool"] = "perptail";
  m["version"] = "0.1.0";
  m["command"] = c.command;
  m["config"] = c.config;
  m["seed"] = c.sim.seed;
  m["threads"] = opt.threads ? *opt.threads : thread_count();
  m["started_at"] = now_utc();
  m["status"] = to_string(r.status);
  m["summary"] = r.summary;
  Json outs = Json::array();
  for (const auto& p : r.outputs) outs.push_back(p.filename().string());
  m["outputs"] = outs;
  if (!r.error_code.empty()) m["error"] = {{"code", r.error_code}, {"message", r.error_message}};
  const fs::path p = c.out_dir / "manifest.json";
  csv::write_atomic(p, m.dump(2) + "\n");
  r.outputs.push_back(p);
}

}  // namespace

RunResult run(const Json& config, const RunOptions& options) {
  RunResult r;
  Context c;
  c.config = config;
  c.result = &r;
  if (options.threads) set_thread_count(*options.threads);
  bool loaded = false;
  try {
    load(c, options);
    loaded = true;
    fs::create_directories(c.out_dir);
    dispatch(c);
    const bool strict = config.value("fail_on_inconclusive", false);
    if (r.status == Status::Fail) r.exit_code = kExitFail;
    else if (r.status == Status::Inconclusive && strict) r.exit_code = kExitInconclusive;
    else r.exit_code = kExitOk;
  } catch (const Error& e) {
    r.error_code = std::string(to_string(e.code()));
    r.error_message = e.what();
    // what() leads with the code name.
    if (r.error_message.rfind(r.error_code + ": ", 0) == 0) r.error_message.erase(0, r.error_code.size() + 2);
    r.exit_code = e.code() == ErrorCode::ConfigInvalid ? kExitConfig : kExitError;
    r.status = Status::Fail;
  } catch (const std::exception& e) {
    // JSON type errors and filesystem failures.
    r.error_code = loaded ? "RuntimeError" : std::string(to_string(ErrorCode::ConfigInvalid));
    r.error_message = e.what();
    r.exit_code = loaded ? kExitError : kExitConfig;
    r.status = Status::Fail;
  }
  if (loaded) {
    try {
      write_manifest(c, r, options);
    } catch (const std::exception& e) {
      r.error_code = "RuntimeError";
      r.error_message = std::string("manifest: ") + e.what();
      r.exit_code = kExitError;
    }
  }
  return r;
}

int run_main(int argc, char** argv) {
  CLI::App app{"perptail: tail asymptotics of perpetuities and random-walk maxima"};
  std::string config_path;
  std::string output;
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("--config", config_path, "Run config (JSON)")->required()->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("--output", output, "Output directory (overrides output_dir)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed (overrides sim.seed)");
  auto* thr_opt = app.add_option("--threads", threads, "OpenMP thread count")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunOptions opt;
  if (*out_opt) opt.output_dir = output;
  if (*seed_opt) opt.seed = seed;
  if (*thr_opt) opt.threads = threads;

  Json config;
  try {
    std::ifstream in(config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw std::runtime_error("empty config");
    config = Json::parse(text);
  } catch (const std::exception& e) {
    std::cerr << "error: ConfigInvalid: " << e.what() << "\n";
    return kExitConfig;
  }

  const RunResult r = run(config, opt);
  for (const auto& line : r.summary) std::cout << line << "\n";
  if (!r.error_code.empty()) std::cerr << "error: " << r.error_code << ": " << r.error_message << "\n";
  return r.exit_code;
}

}  // namespace perptail
