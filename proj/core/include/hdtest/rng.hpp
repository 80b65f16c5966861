#pragma once

#include <cstdint>
#include <random>

namespace hdtest {

/// Seeded random generator with derivable substreams. Replication r of an
/// experiment draws from Rng::stream(master_seed, purpose, r), so results do
/// not depend on execution order or worker count.
class Rng {
 public:
  /// Substream purposes; keeps independently-seeded draws from colliding.
  enum class Purpose : std::uint64_t {
    kReplication = 0,   // per-replication data stream
    kSharedCov = 1,     // covariance realized once per experiment
    kSharedMean = 2,    // mean support realized once per experiment
  };

  explicit Rng(std::uint64_t seed);

  static Rng stream(std::uint64_t master_seed, Purpose purpose,
                    std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform draw strictly inside (0, 1).
  double uniform01();

  /// Unbiased uniform integer in [0, bound).
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Standard normal (Box-Muller, cached spare).
  double normal();

  /// Standardized t(4): a t(4) variate scaled by 1/sqrt(2) to unit variance.
  double standardized_t4();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64-style bit mixer used for seed derivation.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace hdtest
