#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "ghostlab/reasoning_dag.hpp"
#include "ghostlab/solver.hpp"

using namespace ghostlab;

namespace {

const CoefficientField kOne = CoefficientField::constant(1.0);
const CoefficientField kA = CoefficientField::distance_power(0.5, 0.5);

DiscreteField wave(int m) {
  return DiscreteField::from_function(make_grid(m), [](Point x) { return 3 * x.x1 + std::cos(M_PI * x.x2); });
}

void BM_Integrate(benchmark::State& state) {
  const auto u = wave(static_cast<int>(state.range(0)));
  const IntegrandSpec spec{DoublePhase{2.0, 2.7}};
  for (auto _ : state) benchmark::DoNotOptimize(integrate(spec, kA, kOne, u));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(u.grid().cell_count()));
}
BENCHMARK(BM_Integrate)->Arg(64)->Arg(256);

void BM_AssembleGradient(benchmark::State& state) {
  const auto u = wave(static_cast<int>(state.range(0)));
  const IntegrandSpec spec{DoublePhase{2.0, 2.7}};
  for (auto _ : state) benchmark::DoNotOptimize(assemble_objective_gradient(spec, kA, kOne, u));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(u.grid().cell_count()));
}
BENCHMARK(BM_AssembleGradient)->Arg(64)->Arg(256);

void BM_MinimizeDoublePhase(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto b = wave(m);
  SolveConfig cfg;
  cfg.tol_grad = 1e-6;
  cfg.continuation = {{0.1, 0.0}, {0.0, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(ghost_continuation({DoublePhase{2.0, 2.7}}, kA, kOne, b.grid(), b, cfg));
}
BENCHMARK(BM_MinimizeDoublePhase)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Colimit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  ClaimDag dag;
  for (int k = 0; k < n; ++k) dag.add_claim({"c" + std::to_string(k), "", {"a", "b", "c", "d"}});
  std::uniform_int_distribution<int> label(0, 3);
  const char* names[] = {"a", "b", "c", "d"};
  for (int k = 1; k < n; ++k) {
    std::map<std::string, std::string> m;
    for (const char* l : names) m[l] = names[label(rng)];
    dag.add_edge({"c" + std::to_string(k - 1), "c" + std::to_string(k), m});
  }
  dag.validate([](const ClaimNode&) { return true; });
  for (auto _ : state) benchmark::DoNotOptimize(colimit(dag));
}
BENCHMARK(BM_Colimit)->Arg(16)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
