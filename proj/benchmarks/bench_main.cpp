#include <benchmark/benchmark.h>

#include "sigdev/development.hpp"
#include "sigdev/distance.hpp"
#include "sigdev/fbm.hpp"
#include "sigdev/matrix.hpp"
#include "sigdev/rng.hpp"

namespace {

using namespace sigdev;

RMat random_antisym(int k, std::uint64_t seed) {
  RngStream rng(seed, 0xBE, 0, 0);
  RMat m = RMat::Zero(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const double v = rng.gaussian();
      m(a, b) = v;
      m(b, a) = -v;
    }
  return m;
}

void BM_expm(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const RMat m = random_antisym(k, 1);
  for (auto _ : state) benchmark::DoNotOptimize(expm(m));
}
BENCHMARK(BM_expm)->Arg(5)->Arg(10)->Arg(20);

void BM_develop(benchmark::State& state) {
  FbmConfig fc;
  fc.dim = 3;
  fc.steps = static_cast<int>(state.range(0));
  const SampledPath path = time_augment(simulate_fbm(fc, 1)[0]);

  DistanceSpec spec;
  spec.k = 5;
  spec.K = 1;
  spec.d = path.dim();
  const auto maps = maps_from_params(spec, init_params(spec, 7));
  for (auto _ : state) benchmark::DoNotOptimize(develop(path, maps[0]));
}
BENCHMARK(BM_develop)->Arg(50)->Arg(200);

void bench_train_step(benchmark::State& state, MatrixClass cls) {
  FbmConfig fc;
  fc.dim = 3;
  fc.steps = 50;
  EmpiricalMeasure mu, nu;
  fc.seed = 1;
  for (auto& p : simulate_fbm(fc, 32)) mu.paths.push_back(time_augment(p));
  fc.seed = 2;
  fc.hurst = 0.7;
  for (auto& p : simulate_fbm(fc, 32)) nu.paths.push_back(time_augment(p));

  DistanceSpec spec;
  spec.cls = cls;
  spec.K = 8;
  spec.k = 5;
  spec.d = 4;
  const MapParameters params = init_params(spec, 7);
  std::vector<double> grad;
  for (auto _ : state)
    benchmark::DoNotOptimize(distance_and_gradient(mu, nu, params, spec, grad));
}

void BM_grad_rpcfd(benchmark::State& state) {
  bench_train_step(state, MatrixClass::TridiagAntisym);
}
void BM_grad_pcfd(benchmark::State& state) {
  bench_train_step(state, MatrixClass::SkewHermitian);
}
BENCHMARK(BM_grad_rpcfd);
BENCHMARK(BM_grad_pcfd);

}  // namespace

BENCHMARK_MAIN();
