#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sigdev/development.hpp"
#include "sigdev/distance.hpp"
#include "sigdev/fbm.hpp"
#include "sigdev/rng.hpp"

using namespace sigdev;

namespace {

SampledPath random_path(int d, int segments, RngStream& rng) {
  SampledPath p;
  p.times.resize(segments + 1);
  p.values.resize(segments + 1, d);
  p.values.row(0).setZero();
  p.times[0] = 0.0;
  for (int j = 1; j <= segments; ++j) {
    p.times[j] = p.times[j - 1] + 0.1 + rng.uniform();
    for (int c = 0; c < d; ++c)
      p.values(j, c) = p.values(j - 1, c) + rng.gaussian();
  }
  return p;
}

EmpiricalMeasure random_measure(int d, int count, RngStream& rng) {
  EmpiricalMeasure mu;
  for (int i = 0; i < count; ++i) mu.paths.push_back(random_path(d, 3, rng));
  return mu;
}

double fd_gradient_entry(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                         MapParameters params, const DistanceSpec& spec,
                         int p, double h) {
  params.values[p] += h;
  const double plus = empirical_distance_sq(mu, nu, params, spec);
  params.values[p] -= 2 * h;
  const double minus = empirical_distance_sq(mu, nu, params, spec);
  return (plus - minus) / (2 * h);
}

}  // namespace

TEST_CASE("parameter round trip is exact (property)") {
  RngStream rng(51, 0);
  for (int it = 0; it < 100; ++it) {
    DistanceSpec spec;
    spec.cls = static_cast<MatrixClass>(rng.below(3));
    spec.K = 1 + static_cast<int>(rng.below(4));
    spec.k = 2 + static_cast<int>(rng.below(4));
    spec.d = 1 + static_cast<int>(rng.below(3));
    const MapParameters p = init_params(spec, it);
    const auto maps = maps_from_params(spec, p);
    for (const auto& fam : maps)
      for (const auto& m : fam.images) CHECK(in_class(m, spec.cls));
    const MapParameters back = params_from_maps(spec, maps);
    REQUIRE(back.values.size() == p.values.size());
    for (std::size_t i = 0; i < p.values.size(); ++i)
      CHECK(back.values[i] == p.values[i]);
  }
}

TEST_CASE("expected development basics") {
  RngStream rng(52, 0);
  DistanceSpec spec;
  spec.K = 1;
  spec.k = 4;
  spec.d = 2;
  const auto fam = maps_from_params(spec, init_params(spec, 1))[0];
  const SampledPath p = random_path(2, 3, rng);

  EmpiricalMeasure single;
  single.paths.push_back(p);
  CHECK(hs_norm(CMat(expected_development(single, fam) - develop(p, fam))) <=
        1e-14);

  EmpiricalMeasure twice;
  twice.paths = {p, p};
  CHECK(hs_norm(CMat(expected_development(twice, fam) - develop(p, fam))) <=
        1e-14);

  const EmpiricalMeasure mu = random_measure(2, 8, rng);
  CHECK(hs_norm(expected_development(mu, fam)) <= std::sqrt(4.0) + 1e-12);
}

TEST_CASE("distance on identical measures is zero") {
  RngStream rng(53, 0);
  const EmpiricalMeasure mu = random_measure(3, 5, rng);
  DistanceSpec spec;
  spec.K = 2;
  spec.k = 3;
  spec.d = 3;
  const MapParameters params = init_params(spec, 9);
  CHECK(empirical_distance_sq(mu, mu, params, spec) == 0.0);
  const auto grad = distance_gradient(mu, mu, params, spec);
  for (double g : grad) CHECK(g == 0.0);
}

TEST_CASE("K=1 single-segment closed form") {
  RngStream rng(54, 0);
  DistanceSpec spec;
  spec.cls = MatrixClass::Antisym;
  spec.K = 1;
  spec.k = 3;
  spec.d = 2;
  const MapParameters params = init_params(spec, 4);
  const auto fam = maps_from_params(spec, params)[0];

  EmpiricalMeasure mu, nu;
  mu.paths.push_back(random_path(2, 1, rng));
  nu.paths.push_back(random_path(2, 1, rng));
  const CMat ex = expm(CMat(fam.apply(mu.paths[0].increment(0))));
  const CMat ey = expm(CMat(fam.apply(nu.paths[0].increment(0))));
  CHECK(empirical_distance_sq(mu, nu, params, spec) ==
        doctest::Approx(hs_dist_sq(ex, ey)).epsilon(1e-12));
}

TEST_CASE("distance symmetry, bound and permutation invariance (property)") {
  RngStream rng(55, 0);
  for (int it = 0; it < 100; ++it) {
    DistanceSpec spec;
    spec.cls = static_cast<MatrixClass>(rng.below(3));
    spec.K = 1 + static_cast<int>(rng.below(3));
    spec.k = 2 + static_cast<int>(rng.below(3));
    spec.d = 2;
    const MapParameters params = init_params(spec, it);
    EmpiricalMeasure mu = random_measure(2, 2 + static_cast<int>(rng.below(3)), rng);
    const EmpiricalMeasure nu = random_measure(2, 3, rng);

    const double dist = empirical_distance_sq(mu, nu, params, spec);
    CHECK(dist >= 0.0);
    CHECK(dist <= 4.0 * spec.k);
    CHECK(empirical_distance_sq(nu, mu, params, spec) == dist);

    // reordering only permutes the terms of the development mean
    std::reverse(mu.paths.begin(), mu.paths.end());
    CHECK(empirical_distance_sq(mu, nu, params, spec) ==
          doctest::Approx(dist).epsilon(1e-13));
  }
}

TEST_CASE("gradient matches finite differences") {
  RngStream rng(56, 0);
  for (int it = 0; it < 8; ++it) {
    DistanceSpec spec;
    spec.cls = static_cast<MatrixClass>(it % 3);
    spec.K = 2;
    spec.k = 3;
    spec.d = 2;
    const EmpiricalMeasure mu = random_measure(2, 2, rng);
    const EmpiricalMeasure nu = random_measure(2, 2, rng);
    const MapParameters params = init_params(spec, 100 + it);
    const auto grad = distance_gradient(mu, nu, params, spec);
    double scale = 1e-8;
    for (double g : grad) scale = std::max(scale, std::abs(g));
    for (int p = 0; p < spec.total_params(); ++p) {
      const double fd = fd_gradient_entry(mu, nu, params, spec, p, 1e-5);
      CHECK(std::abs(grad[p] - fd) <= 1e-4 * scale);
    }
  }
}

TEST_CASE("gradient scaling follows the chain rule") {
  RngStream rng(57, 0);
  DistanceSpec spec;
  spec.K = 1;
  spec.k = 3;
  spec.d = 2;
  EmpiricalMeasure mu, nu;
  mu.paths.push_back(random_path(2, 1, rng));
  nu.paths.push_back(random_path(2, 1, rng));
  MapParameters params = init_params(spec, 3);

  // g(c) = dist(c * params): g'(1) = <grad, params>
  const auto grad = distance_gradient(mu, nu, params, spec);
  double directional = 0.0;
  for (int p = 0; p < spec.total_params(); ++p)
    directional += grad[p] * params.values[p];

  const double h = 1e-6;
  MapParameters up = params, down = params;
  for (auto& v : up.values) v *= 1.0 + h;
  for (auto& v : down.values) v *= 1.0 - h;
  const double fd = (empirical_distance_sq(mu, nu, up, spec) -
                     empirical_distance_sq(mu, nu, down, spec)) /
                    (2 * h);
  CHECK(directional == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("training on identical data stays near zero") {
  RngStream rng(58, 0);
  const EmpiricalMeasure mu = random_measure(2, 6, rng);
  DistanceSpec spec;
  spec.K = 2;
  spec.k = 3;
  spec.d = 2;
  TrainConfig cfg;
  cfg.iterations = 100;
  cfg.learning_rate = 0.5;
  cfg.batch = 6;
  const TrainResult r = train(mu, mu, spec, cfg);
  for (double loss : r.loss_trace) CHECK(std::abs(loss) <= 1e-20);
}

TEST_CASE("small-step full-batch ascent is monotone") {
  RngStream rng(59, 0);
  const EmpiricalMeasure mu = random_measure(2, 4, rng);
  const EmpiricalMeasure nu = random_measure(2, 4, rng);
  DistanceSpec spec;
  spec.K = 2;
  spec.k = 3;
  spec.d = 2;
  TrainConfig cfg;
  cfg.iterations = 20;
  cfg.learning_rate = 1e-3;
  cfg.batch = 100;  // larger than the data: every step is full-batch
  const TrainResult r = train(mu, nu, spec, cfg);
  for (std::size_t i = 1; i < r.loss_trace.size(); ++i)
    CHECK(r.loss_trace[i] >= r.loss_trace[i - 1] - 1e-9);
}

TEST_CASE("training separates two fixed polylines") {
  // two deterministic paths with different level-2 signatures
  SampledPath a, b;
  a.times.resize(3);
  a.times << 0.0, 0.5, 1.0;
  a.values.resize(3, 2);
  a.values << 0, 0, 1, 0, 1, 1;  // right then up
  b.times = a.times;
  b.values.resize(3, 2);
  b.values << 0, 0, 0, 1, 1, 1;  // up then right

  EmpiricalMeasure mu, nu;
  mu.paths.push_back(a);
  nu.paths.push_back(b);
  DistanceSpec spec;
  spec.cls = MatrixClass::TridiagAntisym;
  spec.K = 4;
  spec.k = 3;
  spec.d = 2;
  TrainConfig cfg;
  cfg.iterations = 100;
  cfg.learning_rate = 0.5;
  const TrainResult r = train(mu, nu, spec, cfg);
  CHECK(empirical_distance_sq(mu, nu, r.params, spec) > 1e-3);
}

TEST_CASE("training on a grown distribution gap improves the distance") {
  FbmConfig fc;
  fc.dim = 2;
  fc.steps = 20;
  fc.seed = 61;
  EmpiricalMeasure mu, nu;
  for (auto& p : simulate_fbm(fc, 40)) mu.paths.push_back(time_augment(p));
  fc.hurst = 0.2;
  fc.seed = 62;
  for (auto& p : simulate_fbm(fc, 40)) nu.paths.push_back(time_augment(p));

  DistanceSpec spec;
  spec.cls = MatrixClass::TridiagAntisym;
  spec.K = 4;
  spec.k = 4;
  spec.d = 3;
  TrainConfig cfg;
  cfg.iterations = 60;
  cfg.learning_rate = 0.5;
  cfg.batch = 32;
  cfg.seed = 63;
  const double before = empirical_distance_sq(
      mu, nu, init_params(spec, cfg.seed, cfg.init_std_scale), spec);
  const TrainResult r = train(mu, nu, spec, cfg);
  CHECK(empirical_distance_sq(mu, nu, r.params, spec) > before);
}

TEST_CASE("dimension mismatch is rejected") {
  RngStream rng(64, 0);
  const EmpiricalMeasure mu = random_measure(3, 2, rng);
  DistanceSpec spec;
  spec.K = 1;
  spec.k = 3;
  spec.d = 2;  // paths have d = 3
  CHECK_THROWS_AS(
      empirical_distance_sq(mu, mu, init_params(spec, 0), spec),
      std::invalid_argument);
}
