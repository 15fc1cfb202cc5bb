#pragma once

#include <vector>

#include "sigdev/word.hpp"

namespace sigdev {

// Element of the truncated free tensor algebra over R^d: one dense real
// coefficient array per level n in [0, depth], indexed by word_index.
class TruncatedTensor {
public:
  TruncatedTensor() = default;
  TruncatedTensor(int d, int depth);

  // Multiplicative unit (1, 0, 0, ...).
  static TruncatedTensor unit(int d, int depth);

  int d() const { return d_; }
  int depth() const { return depth_; }

  double coeff(const Word& w) const;
  double& coeff(const Word& w);

  const std::vector<double>& level(int n) const { return levels_[n]; }
  std::vector<double>& level(int n) { return levels_[n]; }

  // l1 sum of level-n coefficients; equals the projective tensor norm of
  // pi_n when R^d carries the l1 norm.
  double level_norm(int n) const;

  TruncatedTensor& operator+=(const TruncatedTensor& o);
  TruncatedTensor& operator*=(double s);

private:
  int d_ = 1;
  int depth_ = 0;
  std::vector<std::vector<double>> levels_;
};

// Truncated tensor product: (a (x) b)^W = sum over splits W = U.V of a^U b^V.
// Result depth defaults to min(depth_a, depth_b).
TruncatedTensor tensor_product(const TruncatedTensor& a,
                               const TruncatedTensor& b, int depth = -1);

// sum_{m=0..depth} a^{(x)m} / m!, requires zero scalar part.
TruncatedTensor tensor_exp(const TruncatedTensor& a, int depth);

// Finite-level proxy for the radius of convergence:
// 1 / max_{1<=n<=depth} ||pi_n||^{1/n}. Heuristic lower bound only; the
// true radius is a property of the full series, which a truncation cannot
// determine. Returns +inf when all positive levels vanish.
double roc_lower_bound(const TruncatedTensor& a);

}  // namespace sigdev
