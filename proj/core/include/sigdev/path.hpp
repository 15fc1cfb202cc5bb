#pragma once

#include <Eigen/Dense>
#include <vector>

namespace sigdev {

// Time-stamped piecewise-linear path in R^d. values row j is the sample at
// times[j]; segments interpolate linearly in between.
struct SampledPath {
  Eigen::VectorXd times;   // strictly increasing, size L+1
  Eigen::MatrixXd values;  // (L+1) x d

  int dim() const { return static_cast<int>(values.cols()); }
  int segments() const { return static_cast<int>(values.rows()) - 1; }

  Eigen::VectorXd increment(int j) const {
    return values.row(j + 1) - values.row(j);
  }

  void validate() const;
};

// Lift X(t) to (s, X(t)) with s the time rescaled to [0,1], prepended as
// channel 0. Applying it twice adds two time channels; that is intended.
SampledPath time_augment(const SampledPath& path);

// Concatenate: shifts eta to start where path ends (in both time and space).
SampledPath concatenate(const SampledPath& path, const SampledPath& eta);

// Time-reversal of the polyline.
SampledPath reverse(const SampledPath& path);

}  // namespace sigdev
