#include "sigdev/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sigdev {

TruncatedTensor::TruncatedTensor(int d, int depth) : d_(d), depth_(depth) {
  if (d < 1 || depth < 0) throw std::invalid_argument("bad tensor shape");
  levels_.resize(depth + 1);
  for (int n = 0; n <= depth; ++n) levels_[n].assign(level_size(d, n), 0.0);
}

TruncatedTensor TruncatedTensor::unit(int d, int depth) {
  TruncatedTensor t(d, depth);
  t.levels_[0][0] = 1.0;
  return t;
}

double TruncatedTensor::coeff(const Word& w) const {
  return levels_[w.length()][word_index(w)];
}

double& TruncatedTensor::coeff(const Word& w) {
  return levels_[w.length()][word_index(w)];
}

double TruncatedTensor::level_norm(int n) const {
  double s = 0.0;
  for (double x : levels_[n]) s += std::abs(x);
  return s;
}

TruncatedTensor& TruncatedTensor::operator+=(const TruncatedTensor& o) {
  if (o.d_ != d_ || o.depth_ != depth_) throw std::invalid_argument("shape mismatch");
  for (int n = 0; n <= depth_; ++n)
    for (std::size_t i = 0; i < levels_[n].size(); ++i)
      levels_[n][i] += o.levels_[n][i];
  return *this;
}

TruncatedTensor& TruncatedTensor::operator*=(double s) {
  for (auto& lvl : levels_)
    for (double& x : lvl) x *= s;
  return *this;
}

TruncatedTensor tensor_product(const TruncatedTensor& a,
                               const TruncatedTensor& b, int depth) {
  if (a.d() != b.d()) throw std::invalid_argument("dimension mismatch");
  const int d = a.d();
  if (depth < 0) depth = std::min(a.depth(), b.depth());
  TruncatedTensor out(d, depth);
  for (int n = 0; n <= depth; ++n) {
    auto& dst = out.level(n);
    for (int p = 0; p <= n; ++p) {
      const int q = n - p;
      if (p > a.depth() || q > b.depth()) continue;
      const auto& la = a.level(p);
      const auto& lb = b.level(q);
      // word U.V has index idx(U) + d^p * idx(V)
      const std::size_t stride = level_size(d, p);
      for (std::size_t j = 0; j < lb.size(); ++j) {
        const double bj = lb[j];
        if (bj == 0.0) continue;
        const std::size_t base = stride * j;
        for (std::size_t i = 0; i < la.size(); ++i) dst[base + i] += la[i] * bj;
      }
    }
  }
  return out;
}

TruncatedTensor tensor_exp(const TruncatedTensor& a, int depth) {
  if (a.level(0)[0] != 0.0)
    throw std::invalid_argument("tensor_exp requires zero scalar part");
  TruncatedTensor result = TruncatedTensor::unit(a.d(), depth);
  TruncatedTensor power = TruncatedTensor::unit(a.d(), depth);
  double factorial = 1.0;
  for (int m = 1; m <= depth; ++m) {
    power = tensor_product(power, a, depth);
    factorial *= m;
    TruncatedTensor term = power;
    term *= 1.0 / factorial;
    result += term;
  }
  return result;
}

double roc_lower_bound(const TruncatedTensor& a) {
  double max_root = 0.0;
  for (int n = 1; n <= a.depth(); ++n) {
    const double norm = a.level_norm(n);
    if (norm > 0.0) max_root = std::max(max_root, std::pow(norm, 1.0 / n));
  }
  if (max_root == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / max_root;
}

}  // namespace sigdev
