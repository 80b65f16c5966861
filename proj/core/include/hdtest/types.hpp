#pragma once

#include <cstdint>

namespace hdtest {

/// A probability in [0, 1]. Used for significance levels and p-values.
class Probability {
 public:
  explicit Probability(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Degrees of freedom of a reference distribution; always >= 1.
class DegreesOfFreedom {
 public:
  explicit DegreesOfFreedom(std::int64_t value);
  std::int64_t value() const noexcept { return value_; }

 private:
  std::int64_t value_;
};

}  // namespace hdtest
