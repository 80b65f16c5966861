#include "hdtest/competitors.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hdtest/accumulate.hpp"
#include "hdtest/errors.hpp"
#include "hdtest/special_fn.hpp"

// All reductions over observations below run through sorted_sum, which makes
// every statistic exactly invariant under row permutations of the input.

namespace hdtest {

namespace {

double n_d(std::size_t n) { return static_cast<double>(n); }

// Dense symmetric Gram matrix G_ij = X_i'X_j.
std::vector<double> gram(const SampleMatrix& x) {
  const std::size_t n = x.rows();
  std::vector<double> g(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = compensated_dot(x.row(i), x.row(j));
      g[i * n + j] = v;
      g[j * n + i] = v;
    }
  }
  return g;
}

// Power sums of the off-diagonal Gram entries used by the Li-Chen estimator.
struct OffDiagonalSums {
  double sum;          // sum_{i != j} g_ij
  double sum_sq;       // sum_{i != j} g_ij^2
  double sum_row_sq;   // sum_j (sum_{i != j} g_ij)^2
};

OffDiagonalSums off_diagonal_sums(const std::vector<double>& g,
                                  std::size_t n) {
  std::vector<double> pair_values;
  std::vector<double> pair_squares;
  pair_values.reserve(n * (n - 1) / 2);
  pair_squares.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = g[i * n + j];
      pair_values.push_back(v);
      pair_squares.push_back(v * v);
    }
  }
  std::vector<double> row_sq(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row;
    row.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j) row.push_back(g[i * n + j]);
    }
    const double r = sorted_sum(std::move(row));
    row_sq[j] = r * r;
  }
  return OffDiagonalSums{
      .sum = 2.0 * sorted_sum(std::move(pair_values)),
      .sum_sq = 2.0 * sorted_sum(std::move(pair_squares)),
      .sum_row_sq = sorted_sum(std::move(row_sq)),
  };
}

double li_chen_from_gram(const std::vector<double>& g, std::size_t n) {
  const OffDiagonalSums s = off_diagonal_sums(g, n);
  const double n1 = n_d(n);
  const double t1 = s.sum_sq / (n1 * (n1 - 1.0));
  const double t2 =
      (s.sum_row_sq - s.sum_sq) / (n1 * (n1 - 1.0) * (n1 - 2.0));
  const double t3 = (s.sum * s.sum - 4.0 * s.sum_row_sq + 2.0 * s.sum_sq) /
                    (n1 * (n1 - 1.0) * (n1 - 2.0) * (n1 - 3.0));
  return t1 - 2.0 * t2 + t3;
}

// Column means computed order-canonically.
std::vector<double> column_means(const SampleMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  std::vector<double> means(p);
  std::vector<double> column(n);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = x(i, j);
    means[j] = sorted_sum(column) / n_d(n);
  }
  return means;
}

// Centered data, tr(S) and tr(S^2) with S the sample covariance on n-1
// degrees of freedom. tr(S^2) comes from the centered Gram matrix, using
// tr{(Xc'Xc)^2} = tr{(Xc Xc')^2}.
struct CovarianceTraces {
  std::vector<double> centered;  // row-major n x p
  double tr_s;
  double tr_s2;
};

CovarianceTraces covariance_traces(const SampleMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  const double m = n_d(n) - 1.0;
  const std::vector<double> means = column_means(x);
  CovarianceTraces out;
  out.centered.resize(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = x.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      out.centered[i * p + j] = row[j] - means[j];
    }
  }
  std::vector<double> diag(n);
  std::vector<double> off_sq;
  off_sq.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::span<const double> ri(out.centered.data() + i * p, p);
    diag[i] = compensated_dot(ri, ri);
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::span<const double> rj(out.centered.data() + j * p, p);
      const double v = compensated_dot(ri, rj);
      off_sq.push_back(v * v);
    }
  }
  std::vector<double> diag_sq(n);
  for (std::size_t i = 0; i < n; ++i) diag_sq[i] = diag[i] * diag[i];
  out.tr_s = sorted_sum(std::move(diag)) / m;
  out.tr_s2 =
      (sorted_sum(std::move(diag_sq)) + 2.0 * sorted_sum(std::move(off_sq))) /
      (m * m);
  return out;
}

CompetitorOutcome make_outcome(CompetitorMethod method, double statistic,
                               Probability alpha) {
  const double z = normal_upper_quantile(alpha);
  return CompetitorOutcome{
      .method = method,
      .statistic = statistic,
      .p_value = Probability(1.0 - normal_cdf(statistic).value()),
      .reject = statistic >= z,
  };
}

}  // namespace

double li_chen_tr_sigma2(const SampleMatrix& x) {
  if (x.rows() < 4) {
    throw insufficient_sample_error(
        "the Li-Chen tr(Sigma^2) estimator needs n >= 4, got " +
        std::to_string(x.rows()));
  }
  return li_chen_from_gram(gram(x), x.rows());
}

CompetitorOutcome cq_one_sample_test(const SampleMatrix& x,
                                     Probability alpha) {
  const std::size_t n = x.rows();
  if (n < 4) {
    throw insufficient_sample_error("the CQ one-sample test needs n >= 4, got " +
                                    std::to_string(n));
  }
  const std::vector<double> g = gram(x);
  const OffDiagonalSums s = off_diagonal_sums(g, n);
  const double nn1 = n_d(n) * (n_d(n) - 1.0);
  const double u = s.sum / nn1;
  const double tr_hat = li_chen_from_gram(g, n);
  const double var_hat = 2.0 / nn1 * tr_hat;
  if (!(var_hat > 0.0)) {
    throw degenerate_data_error(
        "CQ one-sample: estimated variance is not positive");
  }
  return make_outcome(CompetitorMethod::kCQ, u / std::sqrt(var_hat), alpha);
}

CompetitorOutcome cq_two_sample_test(const SampleMatrix& x1,
                                     const SampleMatrix& x2,
                                     Probability alpha) {
  if (x1.cols() != x2.cols()) {
    throw shape_error("samples disagree on dimension: p1 = " +
                      std::to_string(x1.cols()) +
                      ", p2 = " + std::to_string(x2.cols()));
  }
  const std::size_t n1 = x1.rows();
  const std::size_t n2 = x2.rows();
  if (n1 < 4 || n2 < 4) {
    throw insufficient_sample_error(
        "the CQ two-sample test needs n1, n2 >= 4, got " + std::to_string(n1) +
        " and " + std::to_string(n2));
  }

  const std::vector<double> g1 = gram(x1);
  const std::vector<double> g2 = gram(x2);
  const OffDiagonalSums s1 = off_diagonal_sums(g1, n1);
  const OffDiagonalSums s2 = off_diagonal_sums(g2, n2);
  const double d1 = n_d(n1), d2 = n_d(n2);

  // Cross Gram C_ij = X1_i'X2_j and its power sums.
  std::vector<double> cross_values;
  std::vector<double> cross_squares;
  cross_values.reserve(n1 * n2);
  cross_squares.reserve(n1 * n2);
  std::vector<std::vector<double>> rows(n1);
  std::vector<std::vector<double>> cols(n2);
  for (std::size_t i = 0; i < n1; ++i) rows[i].reserve(n2);
  for (std::size_t j = 0; j < n2; ++j) cols[j].reserve(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const double v = compensated_dot(x1.row(i), x2.row(j));
      cross_values.push_back(v);
      cross_squares.push_back(v * v);
      rows[i].push_back(v);
      cols[j].push_back(v);
    }
  }
  std::vector<double> row_sq(n1), col_sq(n2);
  for (std::size_t i = 0; i < n1; ++i) {
    const double r = sorted_sum(std::move(rows[i]));
    row_sq[i] = r * r;
  }
  for (std::size_t j = 0; j < n2; ++j) {
    const double c = sorted_sum(std::move(cols[j]));
    col_sq[j] = c * c;
  }
  const double cross_sum = sorted_sum(std::move(cross_values));
  const double cross_sq = sorted_sum(std::move(cross_squares));
  const double sum_row_sq = sorted_sum(std::move(row_sq));
  const double sum_col_sq = sorted_sum(std::move(col_sq));

  const double q_stat =
      s1.sum / (d1 * (d1 - 1.0)) + s2.sum / (d2 * (d2 - 1.0)) -
      2.0 * cross_sum / (d1 * d2);

  const double tr1 = li_chen_from_gram(g1, n1);
  const double tr2 = li_chen_from_gram(g2, n2);
  // Unbiased estimator of tr(Sigma1 Sigma2) over distinct-index tuples.
  const double m1 = cross_sq / (d1 * d2);
  const double m2 = (sum_col_sq - cross_sq) / (d1 * (d1 - 1.0) * d2);
  const double m3 = (sum_row_sq - cross_sq) / (d1 * d2 * (d2 - 1.0));
  const double m4 =
      (cross_sum * cross_sum - sum_row_sq - sum_col_sq + cross_sq) /
      (d1 * (d1 - 1.0) * d2 * (d2 - 1.0));
  const double tr12 = m1 - m2 - m3 + m4;

  const double var_hat = 2.0 / (d1 * (d1 - 1.0)) * tr1 +
                         2.0 / (d2 * (d2 - 1.0)) * tr2 +
                         4.0 / (d1 * d2) * tr12;
  if (!(var_hat > 0.0)) {
    throw degenerate_data_error(
        "CQ two-sample: estimated variance is not positive");
  }
  return make_outcome(CompetitorMethod::kCQ, q_stat / std::sqrt(var_hat),
                      alpha);
}

CompetitorOutcome bs_one_sample_test(const SampleMatrix& x,
                                     Probability alpha) {
  const std::size_t n = x.rows();
  if (n < 3) {
    throw insufficient_sample_error("the BS one-sample test needs n >= 3, got " +
                                    std::to_string(n));
  }
  const double m = n_d(n) - 1.0;
  const std::vector<double> means = column_means(x);
  const CovarianceTraces traces = covariance_traces(x);

  NeumaierSum mean_norm;
  for (double v : means) mean_norm.add(v * v);
  const double numerator = n_d(n) * mean_norm.value() - traces.tr_s;

  // Ratio-consistent estimator of tr(Sigma^2), Bai and Saranadasa (1996).
  const double spread = traces.tr_s2 - traces.tr_s * traces.tr_s / m;
  if (!(spread > 0.0)) {
    throw degenerate_data_error(
        "BS one-sample: tr(Sigma^2) estimate is not positive");
  }
  const double b2 = m * m / ((m + 2.0) * (m - 1.0)) * spread;
  // Var(n|xbar|^2 - tr S) = 2 tr(Sigma^2) n/(n-1) under the null.
  const double var_hat = 2.0 * n_d(n) / (n_d(n) - 1.0) * b2;
  return make_outcome(CompetitorMethod::kBS, numerator / std::sqrt(var_hat),
                      alpha);
}

CompetitorOutcome sd_one_sample_test(const SampleMatrix& x,
                                     Probability alpha) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (n < 4) {
    throw insufficient_sample_error(
        "the SD one-sample test needs n >= 4 (the centering constant "
        "(n-1)p/(n-3) requires it), got " +
        std::to_string(n));
  }
  const double m = n_d(n) - 1.0;
  const std::vector<double> means = column_means(x);

  // Diagonal sample variances, order-canonical per column.
  std::vector<double> variances(p);
  std::vector<double> column(n);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x(i, j) - means[j];
      column[i] = d * d;
    }
    variances[j] = sorted_sum(column) / m;
    if (!(variances[j] > 0.0)) {
      throw degenerate_data_error(
          "SD one-sample: zero diagonal variance in coordinate " +
          std::to_string(j));
    }
  }

  NeumaierSum q_acc;
  for (std::size_t j = 0; j < p; ++j) {
    q_acc.add(means[j] * means[j] / variances[j]);
  }
  const double q_stat = n_d(n) * q_acc.value();

  // tr(R^2) of the sample correlation matrix via the diagonally scaled
  // centered Gram matrix.
  std::vector<double> scaled(n * p);
  for (std::size_t j = 0; j < p; ++j) {
    const double inv_sd = 1.0 / std::sqrt(variances[j]);
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i * p + j] = (x(i, j) - means[j]) * inv_sd;
    }
  }
  std::vector<double> diag_sq(n);
  std::vector<double> off_sq;
  off_sq.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::span<const double> ri(scaled.data() + i * p, p);
    const double d = compensated_dot(ri, ri);
    diag_sq[i] = d * d;
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::span<const double> rj(scaled.data() + j * p, p);
      const double v = compensated_dot(ri, rj);
      off_sq.push_back(v * v);
    }
  }
  const double tr_r2 =
      (sorted_sum(std::move(diag_sq)) + 2.0 * sorted_sum(std::move(off_sq))) /
      (m * m);

  const double adjust = 1.0 + tr_r2 / std::pow(n_d(p), 1.5);
  const double spread = tr_r2 - n_d(p) * n_d(p) / m;
  if (!(spread > 0.0)) {
    throw degenerate_data_error(
        "SD one-sample: correlation trace term is not positive");
  }
  const double centering = m * n_d(p) / (m - 2.0);
  const double statistic = (q_stat - centering) / std::sqrt(2.0 * spread * adjust);
  return make_outcome(CompetitorMethod::kSD, statistic, alpha);
}

}  // namespace hdtest
