#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ultragram/metric.hpp"

namespace ultragram {

inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;
// Eigenvalues within kClusterTolerance * max(1, ||A||_inf) of the minimum
// are reported as one eigenspace.
inline constexpr double kClusterTolerance = 1e-8;
// Negative eigenvalues down to -kClampTolerance * max(1, ||A||_inf) are
// treated as zero when factoring a Gramian.
inline constexpr double kClampTolerance = 1e-10;

/// Dense symmetric matrix. Constructors enforce exact symmetry by averaging
/// mirrored entries.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {}
  SymMatrix(std::size_t dim, std::vector<double> entries);

  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static SymMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * dim_ + j];
  }
  /// Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double value) noexcept {
    entries_[i * dim_ + j] = value;
    entries_[j * dim_ + i] = value;
  }

  std::span<const double> entries() const noexcept { return entries_; }

  double inf_norm() const noexcept;
  double frobenius_norm() const noexcept;
  std::vector<double> multiply(std::span<const double> x) const;
  /// x^T A x
  double quadratic_form(std::span<const double> x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> entries_;
};

/// Eigendecomposition of a SymMatrix, eigenvalues ascending.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;  // eigenvectors[k] pairs with eigenvalues[k]
  double residual_bound = 0.0;  // >= max_k ||A v_k - lambda_k v_k||_inf
  int sweeps = 0;
};

/// p-Gramian with base point x_0:
///   g_ij = (d(x_i,x_0)^p + d(x_j,x_0)^p - d(x_i,x_j)^p) / 2,  1 <= i,j <= n.
/// p = 0 follows the 0^0 = 0 convention.
SymMatrix build_gramian(const DistanceMatrix& d, double p);

/// Cyclic Jacobi. Sweeps until the off-diagonal Frobenius norm is at most
/// tol * ||A||_F; throws ErrorKind::Numeric after kJacobiMaxSweeps sweeps.
Spectrum sym_eigen(const SymMatrix& a, double tol = kJacobiTolerance);

struct MinEigenpair {
  double lambda_min = 0.0;
  std::vector<std::vector<double>> eigenspace;  // orthonormal
};

MinEigenpair min_eigenpair(const SymMatrix& a,
                           double cluster_tol = kClusterTolerance);

/// lambda_min(A) >= -tol * max(1, ||A||_inf).
bool psd_check(const SymMatrix& a, double tol);

/// Coordinates realizing (X, d^{p/2}) isometrically in R^n: x_0 at the
/// origin, x_i at row i of V Lambda^{1/2} where G_p = V Lambda V^T.
/// Throws ErrorKind::Numeric if G_p is not PSD.
std::vector<std::vector<double>> hilbert_embedding(const DistanceMatrix& d,
                                                   double p);

}  // namespace ultragram
