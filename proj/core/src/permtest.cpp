#include "sigdev/permtest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sigdev/rng.hpp"

namespace sigdev {

void PermTestConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must be in (0,1)");
  if (experiments < 1 || permutations < 1 || m < 1 || n < 1)
    throw std::invalid_argument("N, M, m, n must all be >= 1");
}

namespace {

// indices of the samples used by one experiment: disjoint chunks when the
// pool is large enough, otherwise a fresh random subset
std::vector<int> draw(std::size_t pool_size, int want, int experiment,
                      RngStream& rng) {
  std::vector<int> idx(want);
  const std::size_t offset = static_cast<std::size_t>(experiment) * want;
  if (offset + want <= pool_size) {
    std::iota(idx.begin(), idx.end(), static_cast<int>(offset));
    return idx;
  }
  std::vector<int> all(pool_size);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng.engine());
  std::copy_n(all.begin(), want, idx.begin());
  return idx;
}

double nearest_rank_quantile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

}  // namespace

TestReport permutation_test(const std::vector<SampledPath>& x_pool,
                            const std::vector<SampledPath>& y_pool,
                            PathStatistic& statistic,
                            const PermTestConfig& cfg) {
  cfg.validate();
  if (static_cast<int>(x_pool.size()) < cfg.m ||
      static_cast<int>(y_pool.size()) < cfg.n)
    throw std::invalid_argument("pool smaller than requested sample size");

  const auto t_start = std::chrono::steady_clock::now();
  TestReport report;
  int rejections = 0;

  for (int e = 0; e < cfg.experiments; ++e) {
    RngStream draw_rng(cfg.seed, 0xD0AA, static_cast<std::uint64_t>(e));
    const auto xi = draw(x_pool.size(), cfg.m, e, draw_rng);
    const auto yi = draw(y_pool.size(), cfg.n, e, draw_rng);

    std::vector<SampledPath> pool;
    pool.reserve(cfg.m + cfg.n);
    for (int i : xi) pool.push_back(x_pool[i]);
    for (int i : yi) pool.push_back(y_pool[i]);
    statistic.prepare(pool);

    std::vector<int> x_ids(cfg.m), y_ids(cfg.n);
    std::iota(x_ids.begin(), x_ids.end(), 0);
    std::iota(y_ids.begin(), y_ids.end(), cfg.m);
    double observed;
    try {
      observed = statistic.eval(x_ids, y_ids);
    } catch (const std::exception& ex) {
      throw std::runtime_error("statistic failed in experiment " +
                               std::to_string(e) + ": " + ex.what());
    }

    std::vector<double> permuted(cfg.permutations);
    std::vector<int> labels(cfg.m + cfg.n);
    for (int p = 0; p < cfg.permutations; ++p) {
      RngStream perm_rng(cfg.seed, 0x9E57, static_cast<std::uint64_t>(e),
                         static_cast<std::uint64_t>(p));
      std::iota(labels.begin(), labels.end(), 0);
      std::shuffle(labels.begin(), labels.end(), perm_rng.engine());
      permuted[p] = statistic.eval(
          std::span<const int>(labels.data(), cfg.m),
          std::span<const int>(labels.data() + cfg.m, cfg.n));
    }
    const double threshold = nearest_rank_quantile(permuted, 1.0 - cfg.alpha);
    if (observed > threshold) ++rejections;
    report.statistics.push_back(observed);
    report.thresholds.push_back(threshold);
  }

  report.rejection_ratio =
      static_cast<double>(rejections) / static_cast<double>(cfg.experiments);
  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t_start)
                       .count();
  return report;
}

}  // namespace sigdev
