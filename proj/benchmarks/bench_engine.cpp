#include <benchmark/benchmark.h>

#include "subjfair/oracle.hpp"
#include "subjfair/report.hpp"
#include "subjfair/synth.hpp"

namespace {

subjfair::AuditRunFile synthetic(std::size_t n, double density) {
  subjfair::SynthProfile profile;
  profile.n = n;
  profile.cluster_density = density;
  profile.seed = 17;
  return subjfair::generate_population(profile);
}

void BM_Pipeline(benchmark::State& state) {
  const auto run = synthetic(static_cast<std::size_t>(state.range(0)), 0.3);
  for (auto _ : state) {
    auto family = subjfair::build_cluster_family(run.population, run.perceptions, run.params.delta);
    auto result = subjfair::run_pipeline(run.population, family, run.recommendations, run.strategy);
    benchmark::DoNotOptimize(result);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Pipeline)->Arg(25)->Arg(100)->Arg(400)->Complexity();

void BM_Audit(benchmark::State& state) {
  const auto run = synthetic(static_cast<std::size_t>(state.range(0)), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(subjfair::audit_run(run));
}
BENCHMARK(BM_Audit)->Arg(100)->Arg(400);

void BM_Report(benchmark::State& state) {
  const auto run = synthetic(100, 0.3);
  for (auto _ : state) {
    auto doc = subjfair::build_report(run);
    benchmark::DoNotOptimize(subjfair::emit_report(doc, subjfair::ReportFormat::json));
  }
}
BENCHMARK(BM_Report);

void BM_Oracle(benchmark::State& state) {
  const auto run = synthetic(8, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(subjfair::brute_force_oracle(run));
}
BENCHMARK(BM_Oracle);

}  // namespace

BENCHMARK_MAIN();
