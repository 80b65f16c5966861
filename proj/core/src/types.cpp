#include "hdtest/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hdtest {

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("probability must lie in [0,1], got " +
                            std::to_string(value));
  }
}

DegreesOfFreedom::DegreesOfFreedom(std::int64_t value) : value_(value) {
  if (value < 1) {
    throw std::domain_error("degrees of freedom must be >= 1, got " +
                            std::to_string(value));
  }
}

}  // namespace hdtest
