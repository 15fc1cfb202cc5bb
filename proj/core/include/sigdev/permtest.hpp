#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sigdev/path.hpp"

namespace sigdev {

struct PermTestConfig {
  double alpha = 0.05;
  int experiments = 10;    // N
  int permutations = 500;  // M
  int m = 200;             // sample size of X
  int n = 200;             // sample size of Y
  bool h0 = false;         // null hypothesis true?
  std::uint64_t seed = 0;

  void validate() const;
};

// A two-sample statistic on paths. prepare() sees the pooled paths of one
// experiment once, so per-path work (e.g. developments) can be cached;
// eval() is then called with index subsets of that pool.
class PathStatistic {
public:
  virtual ~PathStatistic() = default;
  virtual void prepare(const std::vector<SampledPath>& pool) {}
  virtual double eval(std::span<const int> xs, std::span<const int> ys) const = 0;
};

struct TestReport {
  double rejection_ratio = 0.0;            // power (h0 false) or Type-I error
  std::vector<double> statistics;          // T(X, Y) per experiment
  std::vector<double> thresholds;          // (1-alpha) permutation quantile
  double seconds = 0.0;
};

// Permutation two-sample test: per experiment, draw m X-samples and n
// Y-samples from the pools (disjoint chunks when the pools allow, random
// subsets otherwise), sample M uniform permutations of the pooled labels,
// and reject when T(X,Y) strictly exceeds the empirical (1-alpha) quantile
// (nearest-rank) of the permuted statistics.
TestReport permutation_test(const std::vector<SampledPath>& x_pool,
                            const std::vector<SampledPath>& y_pool,
                            PathStatistic& statistic,
                            const PermTestConfig& cfg);

}  // namespace sigdev
