#include <benchmark/benchmark.h>

#include <vector>

#include "tnbsd/distance.hpp"
#include "tnbsd/fingerprint.hpp"
#include "tnbsd/generators.hpp"
#include "tnbsd/nb_matrix.hpp"
#include "tnbsd/rewiring.hpp"

namespace {

using namespace tnbsd;

Graph er(std::size_t n, double k) {
  ModelSpec s;
  s.model = Model::kErdosRenyi;
  s.n = n;
  s.mean_degree = k;
  s.seed = 1;
  return generate(s);
}

void BM_BuildNbMatrix(benchmark::State& state) {
  const Graph g = er(static_cast<std::size_t>(state.range(0)), 15.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_nb_matrix(g));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(build_nb_matrix(g).nnz()));
}
BENCHMARK(BM_BuildNbMatrix)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

void BM_Shave(benchmark::State& state) {
  const Graph g = er(static_cast<std::size_t>(state.range(0)), 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(shave(g));
}
BENCHMARK(BM_Shave)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

// Dense versus iterative on the same graph, r = 50.
void BM_TopEigenvalues(benchmark::State& state) {
  const Graph g = er(static_cast<std::size_t>(state.range(0)), 15.0);
  SpectrumOptions opt;
  opt.dense_threshold = state.range(1) ? 1u << 20 : 0u;
  for (auto _ : state) benchmark::DoNotOptimize(top_eigenvalues(g, 50, opt));
  state.SetLabel(state.range(1) ? "dense" : "krylov");
}
BENCHMARK(BM_TopEigenvalues)
    ->Args({250, 1})
    ->Args({250, 0})
    ->Args({500, 1})
    ->Args({500, 0})
    ->Args({1000, 0})
    ->Args({4000, 0})
    ->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state) {
  ModelSpec s;
  s.model = static_cast<Model>(state.range(0));
  s.n = 2000;
  s.mean_degree = 15.0;
  for (auto _ : state) {
    s.seed++;
    benchmark::DoNotOptimize(generate(s));
  }
  state.SetLabel(model_name(s.model));
}
BENCHMARK(BM_Generate)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_Rewire(benchmark::State& state) {
  const Graph g = er(2000, 15.0);
  const double f = static_cast<double>(state.range(0)) / 100.0;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rewire(g, f, ++seed));
}
BENCHMARK(BM_Rewire)->Arg(1)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Distance(benchmark::State& state) {
  const Fingerprint a = top_eigenvalues(er(300, 8.0), static_cast<std::size_t>(state.range(0)));
  const Fingerprint b = top_eigenvalues(er(300, 9.0), static_cast<std::size_t>(state.range(0)));
  const TuningParams t = TuningParams::cs1_tuned();
  for (auto _ : state) benchmark::DoNotOptimize(tnbsd::tnbsd(a, b, t));
}
BENCHMARK(BM_Distance)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
