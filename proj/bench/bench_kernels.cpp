// Serial reference vs OpenMP for the data-parallel kernels. The second
// benchmark argument selects the policy: 0 serial, 1 parallel.
#include <benchmark/benchmark.h>

#include <vector>

#include "cdt/bhattacharyya.hpp"
#include "cdt/centroids.hpp"
#include "cdt/convexity.hpp"
#include "cdt/divergences.hpp"
#include "cdt/kernels.hpp"
#include "cdt/random.hpp"

using namespace cdt;

namespace {

ExecutionPolicy policy_of(const benchmark::State& state) {
  return state.range(1) == 0 ? ExecutionPolicy::Serial : ExecutionPolicy::Parallel;
}

std::vector<double> uniform_points(std::size_t n, double lo, double hi, std::uint64_t seed) {
  Sampler s(seed);
  std::vector<double> xs(n);
  for (double& x : xs) x = s.uniform(lo, hi);
  return xs;
}

void BM_QabdBatch(benchmark::State& state) {
  const QabdSpec spec = QabdSpec::create(functions::exp(), generators::log(), generators::log());
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> p = uniform_points(n, 0.2, 3.0, 1);
  const std::vector<double> q = uniform_points(n, 0.2, 3.0, 2);
  for (auto _ : state) {
    const double total = reduce_terms(n, [&](std::size_t i) { return qabd(spec, p[i], q[i]).value; }, policy_of(state));
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_AssignNearest(benchmark::State& state) {
  const QabdSpec spec = QabdSpec::create(functions::exp(), generators::log(), generators::log());
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> points = uniform_points(n, 0.2, 3.0, 3);
  const std::vector<double> centers = uniform_points(16, 0.2, 3.0, 4);
  for (auto _ : state) benchmark::DoNotOptimize(assign_nearest(spec, points, centers, policy_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_ConvexityGrid(benchmark::State& state) {
  ConvexityOptions opt;
  opt.grid = static_cast<std::size_t>(state.range(0));
  opt.range = Interval{0.2, 5.0};
  opt.policy = policy_of(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(is_mn_convex(functions::sinh(), generators::log(), generators::reciprocal(), opt));
}

void BM_CauchyQuadrature(benchmark::State& state) {
  QuadratureConfig config;
  config.panels = static_cast<std::size_t>(state.range(0));
  config.abs_tol = 1e-11;
  config.policy = policy_of(state);
  const Distribution p = DensityModel::cauchy(1.0, config);
  const Distribution q = DensityModel::cauchy(3.0, config);
  for (auto _ : state) benchmark::DoNotOptimize(bhat_coefficient(MeanSpec::harmonic(), 0.3, p, q, config.policy));
}

}  // namespace

BENCHMARK(BM_QabdBatch)->ArgsProduct({{1 << 12, 1 << 16}, {0, 1}})->UseRealTime();
BENCHMARK(BM_AssignNearest)->ArgsProduct({{1 << 12, 1 << 16}, {0, 1}})->UseRealTime();
BENCHMARK(BM_ConvexityGrid)->ArgsProduct({{257, 1025}, {0, 1}})->UseRealTime();
BENCHMARK(BM_CauchyQuadrature)->ArgsProduct({{16, 256}, {0, 1}})->UseRealTime();

BENCHMARK_MAIN();
