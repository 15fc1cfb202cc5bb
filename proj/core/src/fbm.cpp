#include "sigdev/fbm.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

#include "sigdev/rng.hpp"

namespace sigdev {

void FbmConfig::validate() const {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw std::invalid_argument("hurst must be in (0,1)");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (steps < 2) throw std::invalid_argument("steps must be >= 2");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
}

std::vector<SampledPath> simulate_fbm(const FbmConfig& cfg, int count) {
  cfg.validate();
  const int L = cfg.steps;
  const double h2 = 2.0 * cfg.hurst;

  // covariance of (B(t_1), ..., B(t_L)) on the grid without t_0 = 0
  Eigen::VectorXd grid(L);
  for (int i = 0; i < L; ++i)
    grid[i] = cfg.horizon * static_cast<double>(i + 1) / L;
  Eigen::MatrixXd cov(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      cov(i, j) = 0.5 * (std::pow(grid[i], h2) + std::pow(grid[j], h2) -
                         std::pow(std::abs(grid[i] - grid[j]), h2));
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "fBM covariance Cholesky failed (h=" + std::to_string(cfg.hurst) +
        ", steps=" + std::to_string(L) + "): grid too degenerate");
  const Eigen::MatrixXd chol = llt.matrixL();

  std::vector<SampledPath> paths(count);
  Eigen::VectorXd z(L);
  for (int p = 0; p < count; ++p) {
    SampledPath& path = paths[p];
    path.times.resize(L + 1);
    path.times[0] = 0.0;
    path.times.tail(L) = grid;
    path.values.setZero(L + 1, cfg.dim);
    for (int c = 0; c < cfg.dim; ++c) {
      RngStream rng(cfg.seed, 0xFB0, static_cast<std::uint64_t>(p),
                    static_cast<std::uint64_t>(c));
      for (int i = 0; i < L; ++i) z[i] = rng.gaussian();
      path.values.col(c).tail(L) = chol * z;
    }
  }
  return paths;
}

TruncatedTensor bm_expected_signature(int d, double T, int depth) {
  TruncatedTensor quad(d, std::max(depth, 2));
  if (depth >= 2) {
    for (int i = 1; i <= d; ++i) {
      Word w({i, i}, d);
      quad.coeff(w) = T / 2.0;
    }
  }
  return tensor_exp(quad, depth);
}

}  // namespace sigdev
