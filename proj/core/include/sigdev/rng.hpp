#pragma once

#include <cstdint>
#include <random>

namespace sigdev {

// splitmix64 finalizer, used to derive well-separated seeds from
// (master seed, stream indices).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seedable random stream. Streams are identified by up to three indices
// mixed into the master seed, so that e.g. (seed, path_index) or
// (seed, experiment, permutation) yield independent, reproducible streams
// regardless of evaluation order.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed, std::uint64_t a = 0,
                     std::uint64_t b = 0, std::uint64_t c = 0)
      : gen_(mix64(mix64(mix64(mix64(seed) ^ a) ^ b) ^ c)) {}

  double gaussian() { return normal_(gen_); }
  double uniform() { return unif_(gen_); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_);
  }

  std::mt19937_64& engine() { return gen_; }

private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace sigdev
