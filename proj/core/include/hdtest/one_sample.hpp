#pragma once

#include <cstddef>
#include <vector>

#include "hdtest/sample_matrix.hpp"
#include "hdtest/types.hpp"

namespace hdtest {

/// Result of the finite-sample one-sample t-test for H0: mu = 0.
struct OneSampleOutcome {
  double u_stat;          // U_n, mean of the pairwise inner products
  double tr_sigma2_hat;   // sample variance of the pairwise inner products
  double sigma_hat0;      // sqrt(2 tr_sigma2_hat / (n(n-1)))
  double t_stat;          // u_stat / sigma_hat0
  DegreesOfFreedom df;    // k = n(n-1)/2 - 1
  Probability p_value;    // upper-tail t(k) p-value
  bool reject;            // t_stat >= upper alpha quantile of t(k)
  Probability alpha;
};

/// Population quantities the power calculator needs.
struct PopulationDescriptor {
  double tr_sigma2;    // tr(Sigma^2) > 0
  double mu_sq_norm;   // ||mu||^2
  double mu_sigma_mu;  // mu' Sigma mu
  std::size_t n;       // sample size
};

/// All inner products X_i'X_j for i < j, in lexicographic (i, j) order.
/// Requires n >= 2.
std::vector<double> pairwise_inner_products(const SampleMatrix& x);

/// U_n = 2/(n(n-1)) * sum_{i<j} X_i'X_j, an unbiased estimator of ||mu||^2.
/// Requires n >= 2.
double u_statistic(const SampleMatrix& x);

/// Estimates tr(Sigma^2) by the sample variance of the n(n-1)/2 pairwise
/// inner products (divisor k = n(n-1)/2 - 1). Requires n >= 3; throws
/// degenerate_data_error when the products have zero spread.
double estimate_tr_sigma2(const SampleMatrix& x);

/// The one-sample test: studentizes U_n by sigma_hat0 and refers the ratio to
/// a t-distribution with k = n(n-1)/2 - 1 degrees of freedom, rejecting in
/// the upper tail. Valid for any n >= 3 with p large.
OneSampleOutcome one_sample_test(const SampleMatrix& x, Probability alpha);

/// Signal-to-noise ratio
///   sqrt(n(n-1)) ||mu||^2 / sqrt(2 tr(Sigma^2) + 4(n-1) mu'Sigma mu).
double snr_one(const PopulationDescriptor& pop);

/// Asymptotic power 1 - Phi(rho * t_alpha(k) - SNR1). rho approximates the
/// ratio of the estimated to the true null standard deviation by
/// sqrt(E sigma_hat0^2) / sigma_n, a deterministic stand-in for a ratio that
/// is O_p(1); it equals 1 under the null.
Probability theoretical_power_one(const PopulationDescriptor& pop,
                                  Probability alpha);

/// Diagnostic ratio tr(Sigma^4) / tr(Sigma^2)^2. The finite-sample t
/// reference is trustworthy when this is small.
double c1_ratio(double tr_sigma4, double tr_sigma2);

}  // namespace hdtest
