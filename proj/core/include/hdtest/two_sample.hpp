#pragma once

#include <cstddef>

#include "hdtest/sample_matrix.hpp"
#include "hdtest/types.hpp"

namespace hdtest {

/// Result of the finite-sample two-sample t-test for H0: mu1 = mu2.
struct TwoSampleOutcome {
  double v_stat;         // V_{n1 n2}, mean of pairwise Y_i'Y_j
  double sigma_yy_hat;   // sample variance of the pairwise Y products
  double sigma_hat0;     // sqrt(2 sigma_yy_hat / (n1(n1-1)))
  double t_stat;         // v_stat / sigma_hat0
  DegreesOfFreedom df;   // k = n1(n1-1)/2 - 1
  Probability p_value;   // upper-tail t(k) p-value
  bool reject;
  bool swapped;          // samples exchanged so the smaller one plays n1
};

/// Population quantities for the two-sample power calculator. The mixing
/// matrix is Sigma1 + (n1/n2) Sigma2; n1 <= n2 is assumed.
struct TwoSamplePopulationDescriptor {
  double tr_mix2;        // tr{(Sigma1 + (n1/n2) Sigma2)^2} > 0
  double diff_sq_norm;   // ||mu1 - mu2||^2
  double diff_mix_diff;  // (mu1-mu2)'(Sigma1 + (n1/n2) Sigma2)(mu1-mu2)
  std::size_t n1;
  std::size_t n2;
};

/// Scheffe-style recombination of two samples (n1 <= n2, shared p) into n1
/// exchangeable vectors
///   Y_i = X1_i - sqrt(n1/n2) X2_i
///         + 1/sqrt(n1 n2) * sum_{j<=n1} X2_j - 1/n2 * sum_{j<=n2} X2_j,
/// whose mean is exactly X1bar - X2bar. For n1 = n2 this reduces to the
/// row differences X1_i - X2_i.
SampleMatrix scheffe_transform(const SampleMatrix& x1, const SampleMatrix& x2);

/// V statistic: the one-sample U statistic of the transformed rows. Unbiased
/// for ||mu1 - mu2||^2. Requires 2 <= n1 <= n2.
double v_statistic(const SampleMatrix& x1, const SampleMatrix& x2);

/// The two-sample test. Swaps the samples if the first is larger, then
/// studentizes V by the sample variance of the pairwise Y products and refers
/// the ratio to t(k), k = n1(n1-1)/2 - 1. Requires both sample sizes >= 3.
TwoSampleOutcome two_sample_test(const SampleMatrix& x1,
                                 const SampleMatrix& x2, Probability alpha);

/// Signal-to-noise ratio of the two-sample test.
double snr_two(const TwoSamplePopulationDescriptor& pop);

/// Asymptotic power 1 - Phi(t_alpha(k) - SNR2), with the estimated-to-true
/// standard deviation ratio frozen at its null value 1.
Probability theoretical_power_two(const TwoSamplePopulationDescriptor& pop,
                                  Probability alpha);

/// Diagnostic ratio tr(M^4) / tr(M^2)^2 for the pooled matrix
/// M = Sigma1 + Sigma2 (the dominant term of the two-sample trace condition).
double c2_ratio(double tr_mix4, double tr_mix2);

}  // namespace hdtest
