#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sigdev/matrix.hpp"
#include "sigdev/path.hpp"

namespace sigdev {

// Which distance this is: TridiagAntisym maps give RPCFD, Antisym OPCFD,
// SkewHermitian the full PCFD.
struct DistanceSpec {
  MatrixClass cls = MatrixClass::TridiagAntisym;
  int K = 8;  // number of linear maps (atoms of the empirical measure)
  int k = 5;  // matrix order
  int d = 4;  // path dimension after time augmentation

  int params_per_map() const { return d * class_dimension(cls, k); }
  int total_params() const { return K * params_per_map(); }
};

// Flat real parameter vector <-> K map families, bijectively.
struct MapParameters {
  std::vector<double> values;
};

// Real basis of the matrix class, in the order used by the parameter layout.
std::vector<CMat> class_basis(MatrixClass cls, int k);

std::vector<LinearMapFamily> maps_from_params(const DistanceSpec& spec,
                                              const MapParameters& params);
MapParameters params_from_maps(const DistanceSpec& spec,
                               const std::vector<LinearMapFamily>& maps);

// Equal-weight empirical measure on (time-augmented) sampled paths.
struct EmpiricalMeasure {
  std::vector<SampledPath> paths;
};

// Mean development of the measure under one map.
CMat expected_development(const EmpiricalMeasure& mu,
                          const LinearMapFamily& map);

// (1/K) sum_i || D_mu(M_i) - D_nu(M_i) ||_HS^2.
double empirical_distance_sq(const EmpiricalMeasure& mu,
                             const EmpiricalMeasure& nu,
                             const MapParameters& params,
                             const DistanceSpec& spec);

// Exact gradient of empirical_distance_sq with respect to params, via the
// Frechet derivative of expm chained through the segment products.
std::vector<double> distance_gradient(const EmpiricalMeasure& mu,
                                      const EmpiricalMeasure& nu,
                                      const MapParameters& params,
                                      const DistanceSpec& spec);

// One distance + gradient evaluation (shares the development pass).
double distance_and_gradient(const EmpiricalMeasure& mu,
                             const EmpiricalMeasure& nu,
                             const MapParameters& params,
                             const DistanceSpec& spec,
                             std::vector<double>& grad);

struct TrainConfig {
  int iterations = 500;
  double learning_rate = 0.5;  // 0.05 for OPCFD / PCFD
  int batch = 1024;
  std::uint64_t seed = 0;
  double beta1 = 0.0;
  double beta2 = 0.9;
  double epsilon = 1e-8;
  double init_std_scale = 1.0;  // multiplies the 1/sqrt(k) init std
};

struct TrainResult {
  MapParameters params;
  std::vector<double> loss_trace;  // mini-batch distance per iteration
};

MapParameters init_params(const DistanceSpec& spec, std::uint64_t seed,
                          double std_scale = 1.0);

// Stochastic gradient ascent of the empirical distance (adaptive moment
// estimation, betas (0, 0.9)). Throws on non-finite loss.
TrainResult train(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                  const DistanceSpec& spec, const TrainConfig& cfg);

}  // namespace sigdev
