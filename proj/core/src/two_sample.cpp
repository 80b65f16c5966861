#include "hdtest/two_sample.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hdtest/accumulate.hpp"
#include "hdtest/errors.hpp"
#include "hdtest/one_sample.hpp"
#include "hdtest/special_fn.hpp"

namespace hdtest {

namespace {

void check_shapes(const SampleMatrix& x1, const SampleMatrix& x2) {
  if (x1.cols() != x2.cols()) {
    throw shape_error("samples disagree on dimension: p1 = " +
                      std::to_string(x1.cols()) +
                      ", p2 = " + std::to_string(x2.cols()));
  }
}

}  // namespace

SampleMatrix scheffe_transform(const SampleMatrix& x1, const SampleMatrix& x2) {
  check_shapes(x1, x2);
  const std::size_t n1 = x1.rows();
  const std::size_t n2 = x2.rows();
  if (n1 > n2) {
    throw std::invalid_argument(
        "scheffe_transform requires n1 <= n2 (callers swap samples first)");
  }
  const std::size_t p = x1.cols();

  // Column sums of the first n1 rows of X2 and of all of X2, accumulated in
  // a fixed row order so the equal-n case cancels exactly.
  std::vector<NeumaierSum> head(p);
  std::vector<NeumaierSum> all(p);
  for (std::size_t j = 0; j < n2; ++j) {
    const auto row = x2.row(j);
    for (std::size_t c = 0; c < p; ++c) {
      if (j < n1) head[c].add(row[c]);
      all[c].add(row[c]);
    }
  }

  const double scale = std::sqrt(static_cast<double>(n1) /
                                 static_cast<double>(n2));
  const double c_head =
      1.0 / std::sqrt(static_cast<double>(n1) * static_cast<double>(n2));
  const double c_all = 1.0 / static_cast<double>(n2);

  std::vector<double> adjust(p);
  for (std::size_t c = 0; c < p; ++c) {
    adjust[c] = c_head * head[c].value() - c_all * all[c].value();
  }

  std::vector<double> data(n1 * p);
  for (std::size_t i = 0; i < n1; ++i) {
    const auto r1 = x1.row(i);
    const auto r2 = x2.row(i);
    for (std::size_t c = 0; c < p; ++c) {
      data[i * p + c] = r1[c] - scale * r2[c] + adjust[c];
    }
  }
  return SampleMatrix(n1, p, std::move(data));
}

double v_statistic(const SampleMatrix& x1, const SampleMatrix& x2) {
  if (x1.rows() < 2) {
    throw insufficient_sample_error(
        "the V statistic needs n1 >= 2 observations, got " +
        std::to_string(x1.rows()));
  }
  return u_statistic(scheffe_transform(x1, x2));
}

TwoSampleOutcome two_sample_test(const SampleMatrix& x1,
                                 const SampleMatrix& x2, Probability alpha) {
  check_shapes(x1, x2);
  const bool swapped = x1.rows() > x2.rows();
  const SampleMatrix& a = swapped ? x2 : x1;
  const SampleMatrix& b = swapped ? x1 : x2;
  if (a.rows() < 3) {
    throw insufficient_sample_error(
        "the two-sample test needs both sample sizes >= 3, got " +
        std::to_string(x1.rows()) + " and " + std::to_string(x2.rows()));
  }

  const SampleMatrix y = scheffe_transform(a, b);
  const OneSampleOutcome base = one_sample_test(y, alpha);

  TwoSampleOutcome out{
      .v_stat = base.u_stat,
      .sigma_yy_hat = base.tr_sigma2_hat,
      .sigma_hat0 = base.sigma_hat0,
      .t_stat = base.t_stat,
      .df = base.df,
      .p_value = base.p_value,
      .reject = base.reject,
      .swapped = swapped,
  };
  return out;
}

double snr_two(const TwoSamplePopulationDescriptor& pop) {
  if (!(pop.tr_mix2 > 0.0)) {
    throw std::domain_error("snr_two: tr of the squared mixing matrix must be "
                            "positive");
  }
  if (pop.n1 < 2) {
    throw insufficient_sample_error("snr_two needs n1 >= 2");
  }
  const double n1 = static_cast<double>(pop.n1);
  return std::sqrt(n1 * (n1 - 1.0)) * pop.diff_sq_norm /
         std::sqrt(2.0 * pop.tr_mix2 + 4.0 * (n1 - 1.0) * pop.diff_mix_diff);
}

Probability theoretical_power_two(const TwoSamplePopulationDescriptor& pop,
                                  Probability alpha) {
  if (pop.n1 < 3) {
    throw insufficient_sample_error("theoretical_power_two needs n1 >= 3");
  }
  const double snr = snr_two(pop);
  const DegreesOfFreedom df(
      static_cast<std::int64_t>(pop.n1 * (pop.n1 - 1) / 2) - 1);
  const double threshold = t_upper_quantile(alpha, df) - snr;
  return Probability(1.0 - normal_cdf(threshold).value());
}

double c2_ratio(double tr_mix4, double tr_mix2) {
  if (!(tr_mix4 > 0.0) || !(tr_mix2 > 0.0)) {
    throw std::domain_error("c2_ratio: trace inputs must be positive");
  }
  return tr_mix4 / (tr_mix2 * tr_mix2);
}

}  // namespace hdtest
