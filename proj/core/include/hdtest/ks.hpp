#pragma once

#include <functional>
#include <span>

namespace hdtest {

struct KsResult {
  double distance;  // sup |F_emp - F|
  double p_value;   // asymptotic Kolmogorov p-value
};

/// One-sample Kolmogorov-Smirnov comparison of a sample against a reference
/// CDF. The p-value uses the asymptotic Kolmogorov distribution with the
/// small-sample effective size sqrt(m) + 0.12 + 0.11/sqrt(m).
KsResult ks_distance(std::span<const double> sample,
                     const std::function<double(double)>& cdf);

/// Survival function of the Kolmogorov distribution,
/// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

}  // namespace hdtest
