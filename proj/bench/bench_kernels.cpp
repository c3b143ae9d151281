// Serial reference against the OpenMP kernels on the same inputs.
#include <benchmark/benchmark.h>

#include "perptail/model/catalog.hpp"
#include "perptail/renewal/convolve.hpp"
#include "perptail/renewal/renewal_table.hpp"
#include "perptail/sampler/sampler.hpp"

using namespace perptail;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "parallel" : "serial"); }

void BM_Convolve(benchmark::State& st) {
  const auto law = catalog("case_i_pareto07").law;
  const auto f = build_grid_df(law.fkappa, -10.0, static_cast<double>(st.range(1)), 0.01);
  for (auto _ : st) benchmark::DoNotOptimize(convolve(f, f, f.first, f.last(), exec_of(st)));
  label(st);
}
BENCHMARK(BM_Convolve)->ArgsProduct({{0, 1}, {50, 200}})->Unit(benchmark::kMillisecond);

void BM_RenewalTable(benchmark::State& st) {
  const auto law = catalog("case_ii_pareto15").law;
  const auto f = build_grid_df(law.fkappa, -20.0, 100.0, 0.02);
  RenewalConfig rc;
  rc.theta = law.theta;
  rc.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(renewal_increments(f, rc));
  label(st);
}
BENCHMARK(BM_RenewalTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Perpetuity(benchmark::State& st) {
  const auto m = catalog("case_ii_pareto15");
  SimConfig c;
  c.n_paths = 200000;
  c.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(sample_perpetuity(m.law, m.b, c));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(c.n_paths));
  label(st);
}
BENCHMARK(BM_Perpetuity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ImportanceSampling(benchmark::State& st) {
  const auto law = catalog("case_i_pareto07").law;
  SimConfig c;
  c.n_paths = 100000;
  c.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(is_tail_max_rw(law, 50.0, c));
  label(st);
}
BENCHMARK(BM_ImportanceSampling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
