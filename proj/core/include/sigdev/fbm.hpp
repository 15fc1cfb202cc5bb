#pragma once

#include <cstdint>
#include <vector>

#include "sigdev/path.hpp"
#include "sigdev/tensor.hpp"

namespace sigdev {

// Fractional Brownian motion on a uniform grid: `steps` increments on
// [0, horizon], i.i.d. channels, exact covariance via Cholesky. hurst = 0.5
// is standard Brownian motion.
struct FbmConfig {
  double hurst = 0.5;
  int dim = 3;
  int steps = 50;
  double horizon = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// count i.i.d. paths starting at 0. Path index and channel feed the RNG
// stream split, so the result is independent of generation order.
std::vector<SampledPath> simulate_fbm(const FbmConfig& cfg, int count);

// Closed-form expected signature of d-dimensional Brownian motion on [0,T]:
// exp((T/2) sum_i e_i (x) e_i), truncated.
TruncatedTensor bm_expected_signature(int d, double T, int depth);

}  // namespace sigdev
