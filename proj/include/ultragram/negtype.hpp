#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ultragram/metric.hpp"

namespace ultragram {

/// A pair (s, t) of nonnegative, disjointly supported vectors of length n+1
/// with equal coordinate sums. Encodes the positive and negative parts of a
/// mean-zero coefficient vector.
class WeightVector {
 public:
  WeightVector() = default;

  /// Validates nonnegativity, disjoint support and sum(s) = sum(t) to 1e-12
  /// relative to sum(s) + sum(t).
  static WeightVector make(std::vector<double> s, std::vector<double> t);
  /// s = max(xi, 0), t = max(-xi, 0). xi must sum to zero.
  static WeightVector sign_split(std::span<const double> xi);
  static WeightVector zero(std::size_t n_points);

  std::size_t size() const noexcept { return s_.size(); }
  std::span<const double> s() const noexcept { return s_; }
  std::span<const double> t() const noexcept { return t_; }

  /// s - t
  std::vector<double> difference() const;
  /// sum_{i>=0} (s_i^2 + t_i^2)
  double squared_norm() const noexcept;
  /// sum_{i>=1} (s_i^2 + t_i^2), the quantity fixed by the allowable set S.
  double squared_norm_without_base() const noexcept;

 private:
  WeightVector(std::vector<double> s, std::vector<double> t)
      : s_(std::move(s)), t_(std::move(t)) {}

  std::vector<double> s_;
  std::vector<double> t_;
};

/// A weight vector on the slice sum_{i>=1} (s_i^2 + t_i^2) = 1.
class SNormalized {
 public:
  /// Checks the normalization to within 1e-12.
  static SNormalized make(WeightVector w);
  /// Rescales w onto the slice. w must have weight off index 0.
  static SNormalized normalize(const WeightVector& w);

  const WeightVector& weights() const noexcept { return w_; }

 private:
  explicit SNormalized(WeightVector w) : w_(std::move(w)) {}
  WeightVector w_;
};

/// gamma(p) = sum_k c_k alpha_k^p over the distinct distances of the space.
struct GammaExpansion {
  std::vector<double> alphas;
  std::vector<double> coefficients;

  double value_at(double p) const;
  /// c_k + ... + c_l for each k.
  std::vector<double> tail_sums() const;
  double total() const;
  double abs_total() const;
};

struct MetricSummary {
  std::size_t n_points = 0;
  double diameter = 0.0;      // D_X, the largest distance
  double aspect_ratio = 1.0;  // D_X over the smallest nonzero distance
  double gamma_n = 0.0;       // 1 - (1/floor(n/2) + 1/ceil(n/2)) / 2, n = |X|
};

MetricSummary summarize(const DistanceMatrix& d);

/// sum_{i,j} d(x_i,x_j)^p xi_i xi_j for mean-zero xi (checked to
/// 1e-12 * sum |xi_i|).
double negtype_quadratic(const DistanceMatrix& d, double p,
                         std::span<const double> xi);

/// 2 sum s_i t_j d_ij^p - sum (s_i s_j + t_i t_j) d_ij^p
double gamma_value(const DistanceMatrix& d, double p, const WeightVector& w);

/// Groups the gamma double sum by distance value. Requires an ultrametric.
GammaExpansion extract_coefficients(const DistanceMatrix& d,
                                    const WeightVector& w);

struct FlatCheck {
  bool flat = false;        // |c_k| <= tol for k >= 2
  bool support_ok = false;  // no weight on X_0, balanced coterie sums
};

FlatCheck check_flat_condition(const DistanceMatrix& d, const SNormalized& w,
                               double tol);

/// Weight vector obtained by lifting eta in R^n to xi = (-sum eta, eta) and
/// sign-splitting xi / ||eta||_2. Lies on the S slice for eta != 0.
SNormalized witness_from_eigenvector(std::span<const double> eta);

struct GapEstimate {
  double estimate = 0.0;
  SNormalized argmin;
};

/// Sample-then-descend upper estimate of
///   Gamma_S(p) = 1/2 inf_{(s,t) in S} gamma(p),
/// which equals lambda_min(G_p). Deterministic in seed.
GapEstimate estimate_gap_S(const DistanceMatrix& d, double p,
                           std::size_t samples, std::uint64_t seed);

/// Sample-then-descend upper estimate of the classical gap
///   Gamma_X(p) = inf_{xi != 0, sum xi = 0} -2 Q(xi) / (sum |xi_k|)^2.
/// A negative value means the space lacks p-negative type.
double estimate_gap_classic(const DistanceMatrix& d, double p,
                            std::size_t samples, std::uint64_t seed);

struct Extension {
  bool unbounded = false;  // all distances equal; the log ratio vanishes
  double epsilon = 0.0;
};

/// eps = ln(1 + gap / (D_X^p gamma(n))) / ln(D_X / min distance): strict
/// q-negative type persists for q in [p, p + eps).
Extension epsilon_extension(double gap, const MetricSummary& summary, double p);

struct SupremalType {
  bool infinite = false;
  bool at_least = false;  // negative type still holds at p_max
  double value = 0.0;

  friend bool operator==(const SupremalType&, const SupremalType&) = default;
};

/// Bisection on p in [0, p_max] using PSD-ness of G_p; infinite for
/// ultrametrics.
SupremalType estimate_supremal_negtype(const DistanceMatrix& d, double p_max,
                                       double tol);

}  // namespace ultragram
