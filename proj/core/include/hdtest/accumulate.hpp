#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace hdtest {

/// Neumaier-compensated accumulator. Keeps a running correction term so that
/// long sums of mixed-magnitude terms retain close to full double precision.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Compensated sum of a range, left to right.
inline double compensated_sum(std::span<const double> xs) noexcept {
  NeumaierSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

/// Compensated sum taken in ascending value order. The result depends only on
/// the multiset of inputs, so reductions built on it are exactly invariant to
/// permutations of the underlying observations.
inline double sorted_sum(std::vector<double> xs) noexcept {
  std::sort(xs.begin(), xs.end());
  NeumaierSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

/// Compensated inner product of two equal-length ranges.
inline double compensated_dot(std::span<const double> a,
                              std::span<const double> b) noexcept {
  NeumaierSum acc;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

}  // namespace hdtest
