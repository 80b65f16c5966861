#include "hdtest/one_sample.hpp"

#include <cmath>
#include <string>

#include "hdtest/accumulate.hpp"
#include "hdtest/errors.hpp"
#include "hdtest/special_fn.hpp"

namespace hdtest {

namespace {

// Sample variance (divisor m-1) of the pairwise products, two-pass.
double sample_variance(const std::vector<double>& xs) {
  const std::size_t m = xs.size();
  const double mean = compensated_sum(xs) / static_cast<double>(m);
  NeumaierSum acc;
  for (double x : xs) {
    const double d = x - mean;
    acc.add(d * d);
  }
  return acc.value() / static_cast<double>(m - 1);
}

}  // namespace

std::vector<double> pairwise_inner_products(const SampleMatrix& x) {
  const std::size_t n = x.rows();
  if (n < 2) {
    throw insufficient_sample_error(
        "pairwise inner products need n >= 2 observations, got " +
        std::to_string(n));
  }
  std::vector<double> products;
  products.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      products.push_back(compensated_dot(x.row(i), x.row(j)));
    }
  }
  return products;
}

double u_statistic(const SampleMatrix& x) {
  const std::vector<double> products = pairwise_inner_products(x);
  return compensated_sum(products) / static_cast<double>(products.size());
}

double estimate_tr_sigma2(const SampleMatrix& x) {
  const std::size_t n = x.rows();
  if (n < 3) {
    throw insufficient_sample_error(
        "estimating tr(Sigma^2) needs n >= 3 observations, got " +
        std::to_string(n));
  }
  const std::vector<double> products = pairwise_inner_products(x);
  const double var = sample_variance(products);
  if (!(var > 0.0)) {
    throw degenerate_data_error(
        "pairwise inner products have zero spread; the studentized statistic "
        "is undefined");
  }
  return var;
}

OneSampleOutcome one_sample_test(const SampleMatrix& x, Probability alpha) {
  const std::size_t n = x.rows();
  if (n < 3) {
    throw insufficient_sample_error(
        "the one-sample test needs n >= 3 observations, got " +
        std::to_string(n));
  }
  const double a = alpha.value();
  if (!(a > 0.0 && a < 1.0)) {
    throw std::domain_error("alpha must be in (0,1), got " +
                            std::to_string(a));
  }

  const std::vector<double> products = pairwise_inner_products(x);
  const double m = static_cast<double>(products.size());
  const double u = compensated_sum(products) / m;
  const double tr_hat = sample_variance(products);
  if (!(tr_hat > 0.0)) {
    throw degenerate_data_error(
        "pairwise inner products have zero spread; the studentized statistic "
        "is undefined");
  }

  const double nn1 = static_cast<double>(n) * static_cast<double>(n - 1);
  const double sigma_hat0 = std::sqrt(2.0 / nn1 * tr_hat);
  const double t_stat = u / sigma_hat0;
  const DegreesOfFreedom df(static_cast<std::int64_t>(n * (n - 1) / 2) - 1);

  OneSampleOutcome out{
      .u_stat = u,
      .tr_sigma2_hat = tr_hat,
      .sigma_hat0 = sigma_hat0,
      .t_stat = t_stat,
      .df = df,
      .p_value = Probability(1.0 - t_cdf(t_stat, df).value()),
      .reject = t_stat >= t_upper_quantile(alpha, df),
      .alpha = alpha,
  };
  return out;
}

double snr_one(const PopulationDescriptor& pop) {
  if (!(pop.tr_sigma2 > 0.0)) {
    throw std::domain_error("snr_one: tr(Sigma^2) must be positive");
  }
  if (pop.n < 2) {
    throw insufficient_sample_error("snr_one needs n >= 2");
  }
  const double n = static_cast<double>(pop.n);
  return std::sqrt(n * (n - 1.0)) * pop.mu_sq_norm /
         std::sqrt(2.0 * pop.tr_sigma2 + 4.0 * (n - 1.0) * pop.mu_sigma_mu);
}

Probability theoretical_power_one(const PopulationDescriptor& pop,
                                  Probability alpha) {
  if (pop.n < 3) {
    throw insufficient_sample_error("theoretical_power_one needs n >= 3");
  }
  const double snr = snr_one(pop);
  const double n = static_cast<double>(pop.n);
  const double base = 2.0 / (n * (n - 1.0)) * pop.tr_sigma2;
  // E sigma_hat0^2 and sigma_n^2 share the tr(Sigma^2) term and differ in the
  // weight on mu'Sigma mu.
  const double expected_sq = base + 4.0 / (n * (n + 1.0)) * pop.mu_sigma_mu;
  const double sigma_n_sq = base + 4.0 / n * pop.mu_sigma_mu;
  const double rho = std::sqrt(expected_sq / sigma_n_sq);
  const DegreesOfFreedom df(
      static_cast<std::int64_t>(pop.n * (pop.n - 1) / 2) - 1);
  const double threshold = rho * t_upper_quantile(alpha, df) - snr;
  return Probability(1.0 - normal_cdf(threshold).value());
}

double c1_ratio(double tr_sigma4, double tr_sigma2) {
  if (!(tr_sigma4 > 0.0) || !(tr_sigma2 > 0.0)) {
    throw std::domain_error("c1_ratio: trace inputs must be positive");
  }
  return tr_sigma4 / (tr_sigma2 * tr_sigma2);
}

}  // namespace hdtest
