#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sizebias/inf_div.hpp"
#include "sizebias/lognormal.hpp"
#include "sizebias/midzuno.hpp"
#include "sizebias/named_dist.hpp"
#include "sizebias/rng.hpp"
#include "sizebias/sum_bias.hpp"

using namespace sizebias;

namespace {

DiscreteDist lattice_dist(int atoms) {
  std::vector<double> masses(static_cast<std::size_t>(atoms), 1.0);
  return DiscreteDist::from_pmf(masses);
}

void BM_Convolve(benchmark::State& state) {
  const auto d = lattice_dist(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(d, d));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Convolve)->RangeMultiplier(4)->Range(16, 256)->Complexity();

void BM_SizeBiasedSum(benchmark::State& state) {
  const std::vector<DiscreteDist> terms(static_cast<std::size_t>(state.range(0)), lattice_dist(8));
  const IndependentSum s(terms);
  for (auto _ : state) benchmark::DoNotOptimize(size_biased_sum_pmf(s));
}
BENCHMARK(BM_SizeBiasedSum)->DenseRange(2, 10, 4);

void BM_PmfRecursion(benchmark::State& state) {
  std::vector<Jump> jumps;
  double a = 0.0;
  for (int k = 1; k <= 20; ++k) {
    jumps.push_back({static_cast<double>(k), 1.0 / (k * k)});
    a += 1.0 / k;
  }
  const LevyRepr levy(a, 0.0, jumps);
  for (auto _ : state) benchmark::DoNotOptimize(pmf_recursion(levy, static_cast<int>(state.range(0))));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PmfRecursion)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_ExtractIncrement(benchmark::State& state) {
  const auto x = tabulate(Poisson{static_cast<double>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(extract_increment(x));
}
BENCHMARK(BM_ExtractIncrement)->Arg(2)->Arg(20)->Arg(200);

void BM_Dickman(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dickman_solve(1.0, h, 10.0));
}
BENCHMARK(BM_Dickman)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Buchstab(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(buchstab_solve(1.0, 0.5, 1e-3, 10.0));
}
BENCHMARK(BM_Buchstab)->Unit(benchmark::kMillisecond);

void BM_Theta(benchmark::State& state) {
  const double c = 1.0 + 1.0 / static_cast<double>(state.range(0));
  double b = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta_t(b, c));
    b = b < 1.5 ? b + 1e-3 : 1.0;
  }
}
BENCHMARK(BM_Theta)->Arg(1)->Arg(10)->Arg(90);

void BM_MixtureKc(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(LognormalOrbitMixture(std::exp(1.0)).kc());
}
BENCHMARK(BM_MixtureKc)->Unit(benchmark::kMillisecond);

Population bench_population(std::size_t n) {
  Rng rng(11);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = 0.5 + rng.uniform();
    ys[i] = rng.uniform();
  }
  return Population(xs, ys);
}

void BM_MidzunoEnumeration(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = bench_population(n);
  for (auto _ : state) benchmark::DoNotOptimize(exact_expectation(p, n / 2));
}
BENCHMARK(BM_MidzunoEnumeration)->DenseRange(8, 16, 4)->Unit(benchmark::kMicrosecond);

void BM_MidzunoSample(benchmark::State& state) {
  const auto p = bench_population(1000);
  Rng rng(12);
  for (auto _ : state) benchmark::DoNotOptimize(midzuno_sample(p, static_cast<std::size_t>(state.range(0)), rng));
}
BENCHMARK(BM_MidzunoSample)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
