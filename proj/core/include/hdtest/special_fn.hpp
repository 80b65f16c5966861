#pragma once

#include "hdtest/types.hpp"

namespace hdtest {

/// Standard normal CDF.
Probability normal_cdf(double x);

/// Student-t CDF with df degrees of freedom.
Probability t_cdf(double x, DegreesOfFreedom df);

/// Student-t density with df degrees of freedom.
double t_pdf(double x, DegreesOfFreedom df);

/// Upper alpha quantile of the t-distribution: the x with
/// 1 - t_cdf(x, df) = alpha. Requires alpha strictly inside (0, 1).
double t_upper_quantile(Probability alpha, DegreesOfFreedom df);

/// Chi-square CDF with df degrees of freedom; 0 for x <= 0.
Probability chi_square_cdf(double x, DegreesOfFreedom df);

/// Upper alpha quantile of the standard normal. Requires alpha in (0, 1).
double normal_upper_quantile(Probability alpha);

// Low-level kernels, exposed so tests can probe them directly.

/// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
/// Continued-fraction evaluation (Lentz), accurate to ~1e-14 away from the
/// extreme corners.
double regularized_incomplete_beta(double a, double b, double x);

/// Regularized lower incomplete gamma P(a, x), a > 0.
double regularized_lower_gamma(double a, double x);

}  // namespace hdtest
