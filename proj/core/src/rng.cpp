#include "hdtest/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hdtest {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = a ^ (0x9E3779B97F4A7C15ULL * (b + 1));
  std::uint64_t z = splitmix64(state);
  return splitmix64(state) ^ z;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng Rng::stream(std::uint64_t master_seed, Purpose purpose,
                std::uint64_t index) {
  const std::uint64_t tagged =
      mix_seed(master_seed, static_cast<std::uint64_t>(purpose));
  return Rng(mix_seed(tagged, index));
}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform01() {
  // 53 random bits shifted into (0,1); the +0.5 keeps 0 out of the support.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_below: bound must be positive");
  }
  const std::uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double Rng::standardized_t4() {
  // t(4) = Z / sqrt(chi2(4)/4); chi2(4) = -2 log(U1 U2). Var(t4) = 2, so the
  // standardized draw divides by sqrt(2).
  const double z = normal();
  const double chi2 = -2.0 * std::log(uniform01() * uniform01());
  return z * 2.0 / std::sqrt(chi2) / std::sqrt(2.0);
}

}  // namespace hdtest
