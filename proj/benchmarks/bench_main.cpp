#include <benchmark/benchmark.h>

#include "vlasov1d/measures.hpp"
#include "vlasov1d/particles.hpp"
#include "vlasov1d/vlasov_grid.hpp"
#include "vlasov1d/wasserstein.hpp"

namespace {

using namespace vlasov1d;

const InitialDistribution& box() {
  static const InitialDistribution f0{UniformBox{0.5}};
  return f0;
}

void BM_ForceNaive(benchmark::State& s) {
  const auto p = sample_initial(box(), static_cast<std::size_t>(s.range(0)), 1,
                                SamplingStrategy::IID);
  for (auto _ : s) benchmark::DoNotOptimize(force_naive(p, KernelKind::exact()));
  s.SetComplexityN(s.range(0));
}
BENCHMARK(BM_ForceNaive)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_ForceSorted(benchmark::State& s) {
  const auto p = sample_initial(box(), static_cast<std::size_t>(s.range(0)), 1,
                                SamplingStrategy::IID);
  for (auto _ : s) benchmark::DoNotOptimize(force_sorted(p));
  s.SetComplexityN(s.range(0));
}
BENCHMARK(BM_ForceSorted)->RangeMultiplier(4)->Range(256, 1 << 18)->Complexity();

void BM_W1Exact(benchmark::State& s) {
  const auto n = static_cast<std::size_t>(s.range(0));
  const auto mu = empirical_measure(sample_initial(box(), n, 1, SamplingStrategy::IID));
  const auto nu = empirical_measure(sample_initial(box(), n, 2, SamplingStrategy::IID));
  for (auto _ : s) benchmark::DoNotOptimize(w1_exact(mu, nu).distance);
}
BENCHMARK(BM_W1Exact)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_StepStrang(benchmark::State& s) {
  const auto n = static_cast<std::size_t>(s.range(0));
  const auto g = project(box(), n, n, 2.0);
  for (auto _ : s) benchmark::DoNotOptimize(step_strang(g, 1e-2));
}
BENCHMARK(BM_StepStrang)->RangeMultiplier(2)->Range(64, 256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
