#include "sigdev/development.hpp"

#include <stdexcept>

namespace sigdev {

TruncatedTensor signature(const SampledPath& path, int depth) {
  path.validate();
  if (depth < 0) throw std::invalid_argument("negative depth");
  const int d = path.dim();
  TruncatedTensor sig = TruncatedTensor::unit(d, depth);
  for (int j = 0; j < path.segments(); ++j) {
    const Eigen::VectorXd inc = path.increment(j);
    TruncatedTensor seg(d, depth);
    if (depth >= 1)
      for (int i = 0; i < d; ++i) seg.level(1)[i] = inc[i];
    sig = tensor_product(sig, tensor_exp(seg, depth));
  }
  return sig;
}

CMat extend_map(const LinearMapFamily& map, const TruncatedTensor& x) {
  if (map.d != x.d()) throw std::invalid_argument("dimension mismatch");
  const int d = x.d();
  const int k = map.k;
  CMat acc = x.level(0)[0] * CMat::Identity(k, k);
  // level-by-level: products for words of length n extend those of n-1 by
  // one letter on the right.
  std::vector<CMat> prev{CMat::Identity(k, k)};
  for (int n = 1; n <= x.depth(); ++n) {
    std::vector<CMat> cur(level_size(d, n));
    const std::size_t stride = prev.size();
    const auto& coeffs = x.level(n);
    for (int last = 0; last < d; ++last) {
      for (std::size_t p = 0; p < stride; ++p) {
        const std::size_t idx = p + stride * static_cast<std::size_t>(last);
        cur[idx] = prev[p] * map.images[last];
        if (coeffs[idx] != 0.0) acc += coeffs[idx] * cur[idx];
      }
    }
    prev = std::move(cur);
  }
  return acc;
}

CMat develop(const SampledPath& path, const LinearMapFamily& map) {
  path.validate();
  if (map.d != path.dim()) throw std::invalid_argument("dimension mismatch");
  CMat result = CMat::Identity(map.k, map.k);
  for (int j = 0; j < path.segments(); ++j)
    result = result * expm(CMat(map.apply(path.increment(j))));
  return result;
}

}  // namespace sigdev
