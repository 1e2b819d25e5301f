#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mhrc {

/// Deterministic random stream. Every simulation component derives its own
/// stream from (master seed, component tag) so that sweeping one parameter
/// never perturbs another component's draws. Distributions are hand-rolled
/// on top of std::mt19937_64 to keep byte-level reproducibility independent
/// of the standard library's distribution implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  static RandomStream derive(std::uint64_t master_seed, std::string_view tag);
  static RandomStream derive(std::uint64_t master_seed, std::string_view tag,
                             std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform01();
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t state);

}  // namespace mhrc
