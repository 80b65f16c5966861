#pragma once

#include "hdtest/sample_matrix.hpp"
#include "hdtest/types.hpp"

namespace hdtest {

enum class CompetitorMethod { kCQ, kBS, kSD };

/// Outcome of a normal-reference competitor test; all three reject in the
/// upper tail at the standard normal quantile.
struct CompetitorOutcome {
  CompetitorMethod method;
  double statistic;
  Probability p_value;
  bool reject;
};

/// One-sample test of Chen and Qin (2010): the same pairwise U statistic,
/// normalized with the unbiased U-statistic estimator of tr(Sigma^2) from
/// Li and Chen (2012) and referred to the standard normal. Requires n >= 4.
CompetitorOutcome cq_one_sample_test(const SampleMatrix& x, Probability alpha);

/// Two-sample test of Chen and Qin (2010). Requires n1, n2 >= 4.
CompetitorOutcome cq_two_sample_test(const SampleMatrix& x1,
                                     const SampleMatrix& x2,
                                     Probability alpha);

/// One-sample analogue of the Bai and Saranadasa (1996) test:
/// n |xbar|^2 - tr(S) normalized by their ratio-consistent tr(Sigma^2)
/// estimator. Requires n >= 3.
CompetitorOutcome bs_one_sample_test(const SampleMatrix& x, Probability alpha);

/// Test of Srivastava and Du (2008): diagonal-standardized statistic based on
/// n xbar' D^{-1} xbar and the sample correlation matrix. Requires n >= 4 so
/// the centering constant (n-1)p/(n-3) exists.
CompetitorOutcome sd_one_sample_test(const SampleMatrix& x, Probability alpha);

/// Unbiased U-statistic estimator of tr(Sigma^2) over 2-, 3- and 4-tuples of
/// distinct observations (Li and Chen, 2012). Location invariant. n >= 4.
double li_chen_tr_sigma2(const SampleMatrix& x);

}  // namespace hdtest
