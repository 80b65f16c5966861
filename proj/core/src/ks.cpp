#include "hdtest/ks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hdtest {

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_distance(std::span<const double> sample,
                     const std::function<double(double)>& cdf) {
  if (sample.empty()) {
    throw std::invalid_argument("ks_distance: sample must be nonempty");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double lo = f - static_cast<double>(i) / m;
    const double hi = static_cast<double>(i + 1) / m - f;
    d = std::max({d, lo, hi});
  }
  const double root_m = std::sqrt(m);
  const double effective = root_m + 0.12 + 0.11 / root_m;
  return KsResult{.distance = d, .p_value = kolmogorov_sf(effective * d)};
}

}  // namespace hdtest
