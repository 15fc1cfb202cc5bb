#include "sigdev/path.hpp"

#include <stdexcept>

namespace sigdev {

void SampledPath::validate() const {
  if (values.rows() < 2) throw std::invalid_argument("path needs >= 2 samples");
  if (times.size() != values.rows())
    throw std::invalid_argument("times/values size mismatch");
  for (Eigen::Index j = 1; j < times.size(); ++j)
    if (!(times[j] > times[j - 1]))
      throw std::invalid_argument("times not strictly increasing");
  if (!values.allFinite() || !times.allFinite())
    throw std::invalid_argument("non-finite path data");
}

SampledPath time_augment(const SampledPath& path) {
  SampledPath out;
  out.times = path.times;
  const Eigen::Index rows = path.values.rows();
  out.values.resize(rows, path.values.cols() + 1);
  const double t0 = path.times[0];
  const double span = path.times[rows - 1] - t0;
  for (Eigen::Index j = 0; j < rows; ++j)
    out.values(j, 0) = (path.times[j] - t0) / span;
  out.values.rightCols(path.values.cols()) = path.values;
  return out;
}

SampledPath concatenate(const SampledPath& path, const SampledPath& eta) {
  if (path.dim() != eta.dim()) throw std::invalid_argument("dimension mismatch");
  const Eigen::Index n1 = path.values.rows();
  const Eigen::Index n2 = eta.values.rows();
  SampledPath out;
  out.times.resize(n1 + n2 - 1);
  out.values.resize(n1 + n2 - 1, path.dim());
  out.times.head(n1) = path.times;
  out.values.topRows(n1) = path.values;
  const double tshift = path.times[n1 - 1] - eta.times[0];
  const Eigen::RowVectorXd xshift =
      path.values.row(n1 - 1) - eta.values.row(0);
  for (Eigen::Index j = 1; j < n2; ++j) {
    out.times[n1 - 1 + j] = eta.times[j] + tshift;
    out.values.row(n1 - 1 + j) = eta.values.row(j) + xshift;
  }
  return out;
}

SampledPath reverse(const SampledPath& path) {
  const Eigen::Index n = path.values.rows();
  SampledPath out;
  out.times.resize(n);
  out.values.resize(n, path.dim());
  const double t0 = path.times[0];
  const double t1 = path.times[n - 1];
  for (Eigen::Index j = 0; j < n; ++j) {
    out.times[j] = t0 + (t1 - path.times[n - 1 - j]);
    out.values.row(j) = path.values.row(n - 1 - j);
  }
  return out;
}

}  // namespace sigdev
