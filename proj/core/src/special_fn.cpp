#include "hdtest/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hdtest {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction for the incomplete beta function, modified Lentz method.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) break;
  }
  return h;
}

// Series expansion of P(a, x), valid for x < a + 1.
double lower_gamma_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) = 1 - P(a, x), valid for x >= a + 1.
double upper_gamma_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

Probability clamp_probability(double p) {
  return Probability(std::clamp(p, 0.0, 1.0));
}

// Generic safeguarded Newton solver for a monotone increasing CDF. Brackets
// the root first, then mixes Newton steps with bisection whenever a step
// would leave the bracket.
template <typename Cdf, typename Pdf>
double invert_cdf(double target, Cdf cdf, Pdf pdf) {
  double lo = -1.0;
  double hi = 1.0;
  while (cdf(lo) > target) lo *= 2.0;
  while (cdf(hi) < target) hi *= 2.0;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = cdf(x) - target;
    if (f > 0.0) {
      hi = x;
    } else if (f < 0.0) {
      lo = x;
    } else {
      return x;
    }
    const double density = pdf(x);
    double next = density > 0.0 ? x - f / density : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) {
      return next;
    }
    x = next;
  }
  return x;
}

}  // namespace

Probability normal_cdf(double x) {
  if (std::isnan(x)) {
    throw std::domain_error("normal_cdf: x must be finite");
  }
  return clamp_probability(0.5 * std::erfc(-x / std::sqrt(2.0)));
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("regularized_incomplete_beta: a, b must be > 0");
  }
  if (std::isnan(x) || x < 0.0 || x > 1.0) {
    throw std::domain_error("regularized_incomplete_beta: x must be in [0,1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double regularized_lower_gamma(double a, double x) {
  if (!(a > 0.0)) {
    throw std::domain_error("regularized_lower_gamma: a must be > 0");
  }
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return lower_gamma_series(a, x);
  return 1.0 - upper_gamma_continued_fraction(a, x);
}

Probability t_cdf(double x, DegreesOfFreedom df) {
  if (std::isnan(x)) {
    throw std::domain_error("t_cdf: x must be finite");
  }
  if (x == 0.0) return Probability(0.5);
  const double nu = static_cast<double>(df.value());
  const double z = nu / (nu + x * x);
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * nu, 0.5, z);
  return clamp_probability(x > 0.0 ? 1.0 - tail : tail);
}

double t_pdf(double x, DegreesOfFreedom df) {
  const double nu = static_cast<double>(df.value());
  const double ln = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                    0.5 * std::log(nu * M_PI) -
                    0.5 * (nu + 1.0) * std::log1p(x * x / nu);
  return std::exp(ln);
}

double t_upper_quantile(Probability alpha, DegreesOfFreedom df) {
  const double a = alpha.value();
  if (!(a > 0.0 && a < 1.0)) {
    throw std::domain_error("t_upper_quantile: alpha must be in (0,1), got " +
                            std::to_string(a));
  }
  if (a == 0.5) return 0.0;
  const double target = 1.0 - a;
  return invert_cdf(
      target, [df](double x) { return t_cdf(x, df).value(); },
      [df](double x) { return t_pdf(x, df); });
}

Probability chi_square_cdf(double x, DegreesOfFreedom df) {
  if (std::isnan(x)) {
    throw std::domain_error("chi_square_cdf: x must be finite");
  }
  if (x <= 0.0) return Probability(0.0);
  const double nu = static_cast<double>(df.value());
  return clamp_probability(regularized_lower_gamma(0.5 * nu, 0.5 * x));
}

double normal_upper_quantile(Probability alpha) {
  const double a = alpha.value();
  if (!(a > 0.0 && a < 1.0)) {
    throw std::domain_error(
        "normal_upper_quantile: alpha must be in (0,1), got " +
        std::to_string(a));
  }
  if (a == 0.5) return 0.0;
  const double target = 1.0 - a;
  return invert_cdf(
      target, [](double x) { return normal_cdf(x).value(); },
      [](double x) {
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
      });
}

}  // namespace hdtest
