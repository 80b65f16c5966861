#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hdtest/rng.hpp"
#include "hdtest/sample_matrix.hpp"

namespace hdtest {

enum class CovarianceKind { kIdentity, kAr1, kRandomSparse };

/// Descriptor of the population covariance used by the generator.
///  - Identity: Sigma = I_p.
///  - Ar1(rho): Sigma_{ij} = rho^|i-j|, |rho| < 1.
///  - RandomSparse: Sigma = G G' + I_p where G is p x p with four nonzero
///    entries per row at random columns, magnitudes Unif(1,2) with random
///    signs.
struct CovarianceSpec {
  CovarianceKind kind = CovarianceKind::kIdentity;
  double rho = 0.0;

  static CovarianceSpec identity();
  static CovarianceSpec ar1(double rho);
  static CovarianceSpec random_sparse();
};

inline constexpr std::size_t kRandomSparseRowNonzeros = 4;

enum class InnovationKind { kGaussian, kStandardizedT4 };

/// Innovation family for the linear model X = mu + Gamma Z: i.i.d. entries
/// with mean 0 and variance 1.
struct InnovationSpec {
  InnovationKind kind = InnovationKind::kGaussian;

  /// Fourth-moment excess eta in E z^4 = 3 + eta. Zero for Gaussian draws;
  /// NaN for standardized t(4), whose fourth moment does not exist. Recorded
  /// for documentation only; no computation consumes it.
  double eta() const;
};

/// Sparse mean vector: floor(p^(1-beta)) entries equal to r at uniformly
/// chosen distinct positions, the rest zero.
struct MeanSpec {
  std::size_t p = 0;
  double beta = 0.0;
  double r = 0.0;

  std::size_t nonzero_count() const;
  double mu_sq_norm() const;  // nonzero_count() * r^2
};

/// A p x q factor with Gamma Gamma' equal to the covariance of its spec.
/// Identity and AR(1) factors are square (q = p, the AR(1) one is the lower
/// Cholesky factor); the random sparse factor is the p x 2p block [G | I_p].
class FactorMatrix {
 public:
  std::size_t dim() const noexcept { return p_; }
  std::size_t inner_dim() const noexcept { return q_; }
  const CovarianceSpec& target() const noexcept { return spec_; }

  /// out = Gamma z; z.size() must be q, out.size() p.
  void apply(std::span<const double> z, std::span<double> out) const;

  /// Dense Sigma = Gamma Gamma', row-major p x p. Intended for oracles and
  /// moderate p.
  std::vector<double> realize_sigma() const;

  /// Exact tr(Sigma^2) of the realized covariance.
  double tr_sigma2() const;

  /// Quadratic form v' Sigma v = ||Gamma' v||^2.
  double quad_form(std::span<const double> v) const;

 private:
  friend FactorMatrix make_factor(const CovarianceSpec&, std::size_t, Rng&);

  struct SparseEntry {
    std::uint32_t col;
    double value;
  };

  CovarianceSpec spec_;
  std::size_t p_ = 0;
  std::size_t q_ = 0;
  std::vector<double> dense_;  // row-major p x p, AR(1) lower Cholesky
  std::vector<std::array<SparseEntry, kRandomSparseRowNonzeros>> sparse_rows_;
};

/// Builds the factor for a covariance spec. The rng is consumed only by the
/// random sparse model.
FactorMatrix make_factor(const CovarianceSpec& spec, std::size_t p, Rng& rng);

/// n x q matrix of i.i.d. innovations with mean 0, variance 1.
SampleMatrix sample_innovations(const InnovationSpec& spec, std::size_t q,
                                std::size_t n, Rng& rng);

/// n draws of X_i = mu + Gamma Z_i with fresh innovations.
SampleMatrix generate_sample(std::span<const double> mu,
                             const FactorMatrix& factor,
                             const InnovationSpec& innov, std::size_t n,
                             Rng& rng);

/// Realizes a sparse mean vector.
std::vector<double> sparse_mean(const MeanSpec& spec, Rng& rng);

/// Closed-form tr(Sigma^2) for Identity and AR(1) covariances. The random
/// sparse model has no spec-level value; use FactorMatrix::tr_sigma2 on the
/// realized factor instead.
double tr_sigma2_exact(const CovarianceSpec& spec, std::size_t p);

}  // namespace hdtest
