#include <benchmark/benchmark.h>

#include <vector>

#include "cricrules/confrontation.hpp"
#include "cricrules/random.hpp"
#include "cricrules/synthetic.hpp"
#include "cricrules/tsne_kernels.hpp"

using namespace cricrules;

namespace {

constexpr std::size_t kDim = 31;

std::vector<double> random_data(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n * dim);
  for (auto& v : out) v = rng.normal();
  return out;
}

// Joint affinities for n random points at perplexity 30, plus a random layout.
struct GradientInput {
  std::vector<double> p;
  std::vector<double> y;
};

GradientInput gradient_input(std::size_t n) {
  const auto data = random_data(n, kDim, 1);
  std::vector<double> d(n * n), cond(n * n);
  kernels::serial::squared_distances(data, n, kDim, d);
  kernels::serial::conditional_affinities(d, n, std::min(30.0, (n - 1) / 3.0), cond);
  GradientInput in{std::vector<double>(n * n), random_data(n, 2, 2)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) in.p[i * n + j] = (cond[i * n + j] + cond[j * n + i]) / (2.0 * n);
  return in;
}

template <auto Kernel>
void BM_distances(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = random_data(n, kDim, 1);
  std::vector<double> out(n * n);
  for (auto _ : state) {
    Kernel(data, n, kDim, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <auto Kernel>
void BM_affinities(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = random_data(n, kDim, 1);
  std::vector<double> d(n * n), out(n * n);
  kernels::serial::squared_distances(data, n, kDim, d);
  for (auto _ : state) {
    auto stats = Kernel(d, n, std::min(30.0, (n - 1) / 3.0), out);
    benchmark::DoNotOptimize(stats);
  }
}

template <auto Kernel>
void BM_gradient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto in = gradient_input(n);
  std::vector<double> g(2 * n);
  for (auto _ : state) {
    auto r = Kernel(in.p, in.y, n, 1.0, g);
    benchmark::DoNotOptimize(r);
  }
}

template <auto Build>
void BM_build_matrix(benchmark::State& state) {
  const auto records = generate_synthetic(demo_spec(), static_cast<std::size_t>(state.range(0)), 3);
  const auto& lex = FeatureLexicon::builtin();
  for (auto _ : state) {
    auto m = Build(records, lex);
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

using BuildFn = ConfrontationMatrix (*)(std::span<const CommentaryRecord>, const FeatureLexicon&);
constexpr BuildFn kBuildSerial = &serial::build_matrix;
constexpr BuildFn kBuildOmp = &build_matrix;

}  // namespace

BENCHMARK(BM_distances<kernels::serial::squared_distances>)->Name("distances/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_distances<kernels::omp::squared_distances>)->Name("distances/omp")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_affinities<kernels::serial::conditional_affinities>)->Name("affinities/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_affinities<kernels::omp::conditional_affinities>)->Name("affinities/omp")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_gradient<kernels::serial::gradient>)->Name("gradient/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_gradient<kernels::omp::gradient>)->Name("gradient/omp")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_build_matrix<kBuildSerial>)->Name("build_matrix/serial")->Arg(24000);
BENCHMARK(BM_build_matrix<kBuildOmp>)->Name("build_matrix/omp")->Arg(24000);

BENCHMARK_MAIN();
