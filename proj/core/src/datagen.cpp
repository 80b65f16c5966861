#include "hdtest/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "hdtest/accumulate.hpp"
#include "hdtest/errors.hpp"

namespace hdtest {

CovarianceSpec CovarianceSpec::identity() {
  return CovarianceSpec{CovarianceKind::kIdentity, 0.0};
}

CovarianceSpec CovarianceSpec::ar1(double rho) {
  if (!(std::abs(rho) < 1.0)) {
    throw std::domain_error("ar1: |rho| must be < 1, got " +
                            std::to_string(rho));
  }
  return CovarianceSpec{CovarianceKind::kAr1, rho};
}

CovarianceSpec CovarianceSpec::random_sparse() {
  return CovarianceSpec{CovarianceKind::kRandomSparse, 0.0};
}

double InnovationSpec::eta() const {
  return kind == InnovationKind::kGaussian
             ? 0.0
             : std::numeric_limits<double>::quiet_NaN();
}

std::size_t MeanSpec::nonzero_count() const {
  if (beta < 0.0) {
    throw std::domain_error("mean spec: beta must be >= 0");
  }
  const double raw =
      std::pow(static_cast<double>(p), 1.0 - beta) + 1e-9;
  if (raw < 1.0) return 0;
  return std::min<std::size_t>(static_cast<std::size_t>(raw), p);
}

double MeanSpec::mu_sq_norm() const {
  return static_cast<double>(nonzero_count()) * r * r;
}

namespace {

// In-place lower Cholesky of a dense symmetric positive definite matrix.
void cholesky_lower(std::vector<double>& a, std::size_t p) {
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a[i * p + j];
      for (std::size_t k = 0; k < j; ++k) {
        sum -= a[i * p + k] * a[j * p + k];
      }
      if (i == j) {
        if (!(sum > 0.0)) {
          throw std::runtime_error(
              "cholesky: matrix not positive definite at pivot " +
              std::to_string(i));
        }
        a[i * p + i] = std::sqrt(sum);
      } else {
        a[i * p + j] = sum / a[j * p + j];
      }
    }
    std::fill(a.begin() + i * p + i + 1, a.begin() + (i + 1) * p, 0.0);
  }
}

}  // namespace

FactorMatrix make_factor(const CovarianceSpec& spec, std::size_t p, Rng& rng) {
  if (p < 1) {
    throw shape_error("factor dimension p must be >= 1");
  }
  FactorMatrix f;
  f.spec_ = spec;
  f.p_ = p;
  switch (spec.kind) {
    case CovarianceKind::kIdentity:
      f.q_ = p;
      break;
    case CovarianceKind::kAr1: {
      f.q_ = p;
      f.dense_.assign(p * p, 0.0);
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
          f.dense_[i * p + j] =
              std::pow(spec.rho, std::abs(static_cast<double>(i) -
                                          static_cast<double>(j)));
        }
      }
      cholesky_lower(f.dense_, p);
      break;
    }
    case CovarianceKind::kRandomSparse: {
      if (p < kRandomSparseRowNonzeros) {
        throw shape_error("random sparse covariance needs p >= 4");
      }
      f.q_ = 2 * p;
      f.sparse_rows_.resize(p);
      std::array<std::uint32_t, kRandomSparseRowNonzeros> cols{};
      for (std::size_t i = 0; i < p; ++i) {
        // Four distinct columns per row, then sorted for a canonical layout.
        std::size_t filled = 0;
        while (filled < kRandomSparseRowNonzeros) {
          const auto c = static_cast<std::uint32_t>(rng.uniform_below(p));
          bool dup = false;
          for (std::size_t k = 0; k < filled; ++k) dup |= (cols[k] == c);
          if (!dup) cols[filled++] = c;
        }
        std::sort(cols.begin(), cols.end());
        for (std::size_t k = 0; k < kRandomSparseRowNonzeros; ++k) {
          const double magnitude = 1.0 + rng.uniform01();
          const double sign = (rng.next_u64() & 1) ? 1.0 : -1.0;
          f.sparse_rows_[i][k] = {cols[k], sign * magnitude};
        }
      }
      break;
    }
  }
  return f;
}

void FactorMatrix::apply(std::span<const double> z,
                         std::span<double> out) const {
  if (z.size() != q_ || out.size() != p_) {
    throw shape_error("factor apply: expected z of size " +
                      std::to_string(q_) + " and out of size " +
                      std::to_string(p_));
  }
  switch (spec_.kind) {
    case CovarianceKind::kIdentity:
      std::copy(z.begin(), z.end(), out.begin());
      break;
    case CovarianceKind::kAr1:
      for (std::size_t i = 0; i < p_; ++i) {
        const double* row = dense_.data() + i * p_;
        double sum = 0.0;
        for (std::size_t j = 0; j <= i; ++j) sum += row[j] * z[j];
        out[i] = sum;
      }
      break;
    case CovarianceKind::kRandomSparse:
      for (std::size_t i = 0; i < p_; ++i) {
        double sum = z[p_ + i];  // identity block
        for (const auto& e : sparse_rows_[i]) sum += e.value * z[e.col];
        out[i] = sum;
      }
      break;
  }
}

std::vector<double> FactorMatrix::realize_sigma() const {
  std::vector<double> sigma(p_ * p_, 0.0);
  switch (spec_.kind) {
    case CovarianceKind::kIdentity:
      for (std::size_t i = 0; i < p_; ++i) sigma[i * p_ + i] = 1.0;
      break;
    case CovarianceKind::kAr1:
      for (std::size_t i = 0; i < p_; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          const double* ri = dense_.data() + i * p_;
          const double* rj = dense_.data() + j * p_;
          double sum = 0.0;
          for (std::size_t k = 0; k <= j; ++k) sum += ri[k] * rj[k];
          sigma[i * p_ + j] = sum;
          sigma[j * p_ + i] = sum;
        }
      }
      break;
    case CovarianceKind::kRandomSparse:
      for (std::size_t i = 0; i < p_; ++i) {
        for (std::size_t j = i; j < p_; ++j) {
          double sum = i == j ? 1.0 : 0.0;
          for (const auto& a : sparse_rows_[i]) {
            for (const auto& b : sparse_rows_[j]) {
              if (a.col == b.col) sum += a.value * b.value;
            }
          }
          sigma[i * p_ + j] = sum;
          sigma[j * p_ + i] = sum;
        }
      }
      break;
  }
  return sigma;
}

double FactorMatrix::tr_sigma2() const {
  switch (spec_.kind) {
    case CovarianceKind::kIdentity:
      return static_cast<double>(p_);
    case CovarianceKind::kAr1:
      return tr_sigma2_exact(spec_, p_);
    case CovarianceKind::kRandomSparse: {
      // Sigma = M + I with M = G G'. tr(Sigma^2) = ||M||_F^2 + 2 tr(M) + p.
      // Accumulate the pairwise row products of G through a column index:
      // M_ij = sum over shared columns of the entry products.
      std::unordered_map<std::uint64_t, double> pair_dot;
      std::vector<std::vector<SparseEntry>> by_col(p_);
      double tr_m = 0.0;
      for (std::size_t i = 0; i < p_; ++i) {
        for (const auto& e : sparse_rows_[i]) {
          by_col[e.col].push_back({static_cast<std::uint32_t>(i), e.value});
          tr_m += e.value * e.value;
        }
      }
      for (const auto& col : by_col) {
        for (std::size_t a = 0; a < col.size(); ++a) {
          for (std::size_t b = a; b < col.size(); ++b) {
            const std::uint64_t key =
                (static_cast<std::uint64_t>(col[a].col) << 32) | col[b].col;
            pair_dot[key] += col[a].value * col[b].value;
          }
        }
      }
      double frob = 0.0;
      for (const auto& [key, dot] : pair_dot) {
        const bool diagonal = (key >> 32) == (key & 0xFFFFFFFFULL);
        frob += diagonal ? dot * dot : 2.0 * dot * dot;
      }
      return frob + 2.0 * tr_m + static_cast<double>(p_);
    }
  }
  return 0.0;
}

double FactorMatrix::quad_form(std::span<const double> v) const {
  if (v.size() != p_) {
    throw shape_error("quad_form: vector size must equal p");
  }
  switch (spec_.kind) {
    case CovarianceKind::kIdentity: {
      NeumaierSum acc;
      for (double x : v) acc.add(x * x);
      return acc.value();
    }
    case CovarianceKind::kAr1: {
      // ||L'v||^2, visiting only nonzero entries of v.
      std::vector<double> w(p_, 0.0);
      for (std::size_t i = 0; i < p_; ++i) {
        if (v[i] == 0.0) continue;
        const double* row = dense_.data() + i * p_;
        for (std::size_t j = 0; j <= i; ++j) w[j] += row[j] * v[i];
      }
      NeumaierSum acc;
      for (double x : w) acc.add(x * x);
      return acc.value();
    }
    case CovarianceKind::kRandomSparse: {
      // ||G'v||^2 + ||v||^2.
      std::vector<double> w(p_, 0.0);
      NeumaierSum acc;
      for (std::size_t i = 0; i < p_; ++i) {
        if (v[i] == 0.0) continue;
        acc.add(v[i] * v[i]);
        for (const auto& e : sparse_rows_[i]) w[e.col] += e.value * v[i];
      }
      for (double x : w) acc.add(x * x);
      return acc.value();
    }
  }
  return 0.0;
}

SampleMatrix sample_innovations(const InnovationSpec& spec, std::size_t q,
                                std::size_t n, Rng& rng) {
  if (q < 1 || n < 1) {
    throw shape_error("sample_innovations: q and n must be >= 1");
  }
  std::vector<double> data(n * q);
  if (spec.kind == InnovationKind::kGaussian) {
    for (double& x : data) x = rng.normal();
  } else {
    for (double& x : data) x = rng.standardized_t4();
  }
  return SampleMatrix(n, q, std::move(data));
}

SampleMatrix generate_sample(std::span<const double> mu,
                             const FactorMatrix& factor,
                             const InnovationSpec& innov, std::size_t n,
                             Rng& rng) {
  const std::size_t p = factor.dim();
  const std::size_t q = factor.inner_dim();
  if (mu.size() != p) {
    throw shape_error("generate_sample: mu has " + std::to_string(mu.size()) +
                      " entries, factor dimension is " + std::to_string(p));
  }
  std::vector<double> data(n * p);
  std::vector<double> z(q);
  const bool gaussian = innov.kind == InnovationKind::kGaussian;
  for (std::size_t i = 0; i < n; ++i) {
    for (double& x : z) x = gaussian ? rng.normal() : rng.standardized_t4();
    std::span<double> row(data.data() + i * p, p);
    factor.apply(z, row);
    for (std::size_t c = 0; c < p; ++c) row[c] += mu[c];
  }
  return SampleMatrix(n, p, std::move(data));
}

std::vector<double> sparse_mean(const MeanSpec& spec, Rng& rng) {
  const std::size_t m = spec.nonzero_count();
  std::vector<double> mu(spec.p, 0.0);
  if (m == 0) return mu;
  // Partial Fisher-Yates selection of m distinct positions.
  std::vector<std::uint32_t> idx(spec.p);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + rng.uniform_below(spec.p - i);
    std::swap(idx[i], idx[j]);
    mu[idx[i]] = spec.r;
  }
  return mu;
}

double tr_sigma2_exact(const CovarianceSpec& spec, std::size_t p) {
  switch (spec.kind) {
    case CovarianceKind::kIdentity:
      return static_cast<double>(p);
    case CovarianceKind::kAr1: {
      // sum_{i,j} rho^{2|i-j|} = p + 2 sum_{d=1}^{p-1} (p-d) rho^{2d}
      const double r2 = spec.rho * spec.rho;
      NeumaierSum acc;
      acc.add(static_cast<double>(p));
      double power = 1.0;
      for (std::size_t d = 1; d < p; ++d) {
        power *= r2;
        acc.add(2.0 * static_cast<double>(p - d) * power);
      }
      return acc.value();
    }
    case CovarianceKind::kRandomSparse:
      throw std::invalid_argument(
          "tr_sigma2_exact: the random sparse model has no spec-level trace; "
          "use FactorMatrix::tr_sigma2 on the realized factor");
  }
  return 0.0;
}

}  // namespace hdtest
