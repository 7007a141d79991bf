#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ultragram/metric.hpp"

namespace ultragram {

/// The coteries B_1..B_r of a finite ultrametric space: the closed balls of
/// radius alpha_1 holding more than one point. Indices refer to x_0..x_n.
struct CoterieDecomposition {
  std::vector<std::vector<std::size_t>> coteries;  // each sorted; ordered by first index
  std::vector<std::size_t> residual;               // X_0, sorted
  double alpha1 = 0.0;

  std::size_t r() const noexcept { return coteries.size(); }
  /// Position j of the coterie containing point i, if any.
  std::optional<std::size_t> coterie_of(std::size_t i) const;
  /// Sum of |B_j| over all coteries.
  std::size_t covered() const noexcept;
};

/// Minimum-eigenspace of the Gramian of a nondegenerate ultrametric, built
/// from coterie differences e_i - e_{k_j}.
struct EigenspaceDescription {
  double lambda_min = 0.0;
  std::size_t dimension = 0;
  /// Vectors in R^n; coordinate c corresponds to point x_{c+1}.
  std::vector<std::vector<double>> basis;
  /// k_j per coterie (point indices), the smallest nonzero member.
  std::vector<std::size_t> representatives;
};

struct Reordering {
  DistanceMatrix matrix;
  std::vector<std::size_t> permutation;  // new point i is old point permutation[i]
};

CoterieDecomposition find_coteries(const DistanceMatrix& d);

/// Exactly one coterie, of size two, containing x_0.
bool is_degenerate(const DistanceMatrix& d);

/// Identity on nondegenerate input; otherwise swaps x_0 with the smallest
/// index outside the unique coterie.
Reordering reorder_nondegenerate(const DistanceMatrix& d);

/// alpha_1^p / 2. Refuses degenerate labelings and p <= 0.
double closed_form_min_eigenvalue(const DistanceMatrix& d, double p);

EigenspaceDescription eigenspace_basis(const DistanceMatrix& d, double p);
std::size_t eigenspace_dimension(const DistanceMatrix& d);

/// Default tolerance for eigenspace_membership: 1e-9 * max(1, ||eta||_inf).
double default_membership_tolerance(std::span<const double> eta);

/// Whether eta lies in the alpha_1^p/2 eigenspace, tested through the
/// lifted vector xi = (-sum eta, eta): xi must vanish on X_0 and on x_0 and
/// sum to zero over each coterie.
bool eigenspace_membership(const DistanceMatrix& d, std::span<const double> eta,
                           double tol);
inline bool eigenspace_membership(const DistanceMatrix& d,
                                  std::span<const double> eta) {
  return eigenspace_membership(d, eta, default_membership_tolerance(eta));
}

}  // namespace ultragram
