#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>

namespace spatialvote {

// One independent random stream per (master seed, experiment key, election
// index). The engine is keyed through std::seed_seq, so a stream never depends
// on how many draws other streams made; parallel and serial runs replay the
// same draws.
class RngStream {
 public:
  using result_type = std::mt19937_64::result_type;

  RngStream(std::uint64_t seed, std::uint64_t experiment, std::uint64_t index) {
    std::seed_seq seq{lo(seed), hi(seed), lo(experiment), hi(experiment), lo(index), hi(index)};
    engine_.seed(seq);
  }
  explicit RngStream(std::uint64_t seed) : RngStream(seed, 0, 0) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  double uniform(double lo_bound, double hi_bound) {
    return std::uniform_real_distribution<double>(lo_bound, hi_bound)(engine_);
  }
  double normal(double mean, double stddev) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }
  // Uniform integer in [0, count).
  std::size_t index(std::size_t count) {
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(engine_);
  }
  template <class T>
  void shuffle(std::span<T> values) {
    std::shuffle(values.begin(), values.end(), engine_);
  }

 private:
  static std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
  static std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

  std::mt19937_64 engine_;
};

}  // namespace spatialvote
