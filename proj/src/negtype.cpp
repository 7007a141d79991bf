#include "ultragram/negtype.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ultragram/error.hpp"
#include "ultragram/gramian.hpp"
#include "ultragram/ultrametric.hpp"

namespace ultragram {

namespace {

constexpr double kSumTolerance = 1e-12;

void require_mean_zero(std::span<const double> xi, const char* what) {
  double sum = 0.0;
  double abs_sum = 0.0;
  for (double v : xi) {
    sum += v;
    abs_sum += std::abs(v);
  }
  if (std::abs(sum) > kSumTolerance * abs_sum)
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + ": coefficients do not sum to zero");
}

void require_length(const DistanceMatrix& d, std::size_t len, const char* what) {
  if (len != d.size())
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + ": vector length " + std::to_string(len) +
                    " does not match " + std::to_string(d.size()) + " points");
}

}  // namespace

// ---------------------------------------------------------------------------
// WeightVector

WeightVector WeightVector::make(std::vector<double> s, std::vector<double> t) {
  if (s.size() != t.size())
    throw Error(ErrorKind::InvalidArgument,
                "weight vector halves differ in length");
  double sum_s = 0.0;
  double sum_t = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] >= 0.0) || !(t[i] >= 0.0) || !std::isfinite(s[i]) ||
        !std::isfinite(t[i]))
      throw Error(ErrorKind::InvalidArgument,
                  "weight vector entries must be finite and nonnegative");
    if (s[i] * t[i] != 0.0)
      throw Error(ErrorKind::InvalidArgument,
                  "weight vector halves overlap at index " + std::to_string(i));
    sum_s += s[i];
    sum_t += t[i];
  }
  if (std::abs(sum_s - sum_t) > kSumTolerance * (sum_s + sum_t))
    throw Error(ErrorKind::InvalidArgument,
                "weight vector halves have different sums");
  return WeightVector(std::move(s), std::move(t));
}

WeightVector WeightVector::sign_split(std::span<const double> xi) {
  require_mean_zero(xi, "sign_split");
  std::vector<double> s(xi.size(), 0.0);
  std::vector<double> t(xi.size(), 0.0);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i] > 0.0) s[i] = xi[i];
    if (xi[i] < 0.0) t[i] = -xi[i];
  }
  return WeightVector(std::move(s), std::move(t));
}

WeightVector WeightVector::zero(std::size_t n_points) {
  return WeightVector(std::vector<double>(n_points, 0.0),
                      std::vector<double>(n_points, 0.0));
}

std::vector<double> WeightVector::difference() const {
  std::vector<double> out(s_.size());
  for (std::size_t i = 0; i < s_.size(); ++i) out[i] = s_[i] - t_[i];
  return out;
}

double WeightVector::squared_norm() const noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < s_.size(); ++i)
    acc += s_[i] * s_[i] + t_[i] * t_[i];
  return acc;
}

double WeightVector::squared_norm_without_base() const noexcept {
  double acc = 0.0;
  for (std::size_t i = 1; i < s_.size(); ++i)
    acc += s_[i] * s_[i] + t_[i] * t_[i];
  return acc;
}

SNormalized SNormalized::make(WeightVector w) {
  if (std::abs(w.squared_norm_without_base() - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidArgument,
                "weight vector is not on the S slice");
  return SNormalized(std::move(w));
}

SNormalized SNormalized::normalize(const WeightVector& w) {
  const double q = w.squared_norm_without_base();
  if (!(q > 0.0))
    throw Error(ErrorKind::InvalidArgument,
                "cannot normalize a weight vector with no weight off x_0");
  const double scale = 1.0 / std::sqrt(q);
  std::vector<double> s(w.s().begin(), w.s().end());
  std::vector<double> t(w.t().begin(), w.t().end());
  for (auto& v : s) v *= scale;
  for (auto& v : t) v *= scale;
  return SNormalized::make(WeightVector::make(std::move(s), std::move(t)));
}

SNormalized witness_from_eigenvector(std::span<const double> eta) {
  double norm2 = 0.0;
  double sum = 0.0;
  for (double v : eta) {
    norm2 += v * v;
    sum += v;
  }
  if (!(norm2 > 0.0))
    throw Error(ErrorKind::InvalidArgument, "eigenvector must be nonzero");
  const double norm = std::sqrt(norm2);
  std::vector<double> s(eta.size() + 1, 0.0);
  std::vector<double> t(eta.size() + 1, 0.0);
  auto place = [&](std::size_t i, double xi) {
    if (xi > 0.0) s[i] = xi / norm;
    if (xi < 0.0) t[i] = -xi / norm;
  };
  place(0, -sum);
  for (std::size_t i = 0; i < eta.size(); ++i) place(i + 1, eta[i]);
  return SNormalized::normalize(WeightVector::make(std::move(s), std::move(t)));
}

// ---------------------------------------------------------------------------
// GammaExpansion / MetricSummary

double GammaExpansion::value_at(double p) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < alphas.size(); ++k)
    acc += coefficients[k] * convention_pow(alphas[k], p);
  return acc;
}

std::vector<double> GammaExpansion::tail_sums() const {
  std::vector<double> tails(coefficients.size());
  double acc = 0.0;
  for (std::size_t k = coefficients.size(); k-- > 0;) {
    acc += coefficients[k];
    tails[k] = acc;
  }
  return tails;
}

double GammaExpansion::total() const {
  return std::accumulate(coefficients.begin(), coefficients.end(), 0.0);
}

double GammaExpansion::abs_total() const {
  double acc = 0.0;
  for (double c : coefficients) acc += std::abs(c);
  return acc;
}

MetricSummary summarize(const DistanceMatrix& d) {
  if (d.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "summary needs at least 2 points");
  MetricSummary m;
  m.n_points = d.size();
  m.diameter = d.max_entry();
  m.aspect_ratio = m.diameter / d.min_nonzero();
  const double lo = static_cast<double>(m.n_points / 2);
  const double hi = static_cast<double>((m.n_points + 1) / 2);
  m.gamma_n = 1.0 - 0.5 * (1.0 / lo + 1.0 / hi);
  return m;
}

// ---------------------------------------------------------------------------
// Quadratic forms

double negtype_quadratic(const DistanceMatrix& d, double p,
                         std::span<const double> xi) {
  require_length(d, xi.size(), "negtype_quadratic");
  require_mean_zero(xi, "negtype_quadratic");
  const std::size_t n = d.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (xi[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j)
      acc += convention_pow(d(i, j), p) * xi[i] * xi[j];
  }
  return acc;
}

double gamma_value(const DistanceMatrix& d, double p, const WeightVector& w) {
  require_length(d, w.size(), "gamma_value");
  const std::size_t n = d.size();
  const auto s = w.s();
  const auto t = w.t();
  double cross = 0.0;
  double self = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dp = convention_pow(d(i, j), p);
      cross += s[i] * t[j] * dp;
      self += (s[i] * s[j] + t[i] * t[j]) * dp;
    }
  }
  return 2.0 * cross - self;
}

GammaExpansion extract_coefficients(const DistanceMatrix& d,
                                    const WeightVector& w) {
  require_length(d, w.size(), "extract_coefficients");
  if (!validate_ultrametric(d).is_ultrametric)
    throw Error(ErrorKind::NotUltrametric,
                "gamma coefficients require an ultrametric");
  const DistanceSpectrum spectrum = distinct_distances(d);
  GammaExpansion out;
  out.alphas = spectrum.alphas;
  out.coefficients.assign(spectrum.ell(), 0.0);
  const auto s = w.s();
  const auto t = w.t();
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double term = 2.0 * s[i] * t[j] - s[i] * s[j] - t[i] * t[j];
      if (term == 0.0) continue;
      // Every off-diagonal entry belongs to some alpha_k by construction.
      out.coefficients[*spectrum.index_of(d(i, j))] += term;
    }
  }
  return out;
}

FlatCheck check_flat_condition(const DistanceMatrix& d, const SNormalized& w,
                               double tol) {
  const GammaExpansion expansion = extract_coefficients(d, w.weights());
  FlatCheck out;
  out.flat = true;
  for (std::size_t k = 1; k < expansion.coefficients.size(); ++k)
    if (std::abs(expansion.coefficients[k]) > tol) out.flat = false;

  const CoterieDecomposition c = find_coteries(d);
  const auto s = w.weights().s();
  const auto t = w.weights().t();
  out.support_ok = true;
  for (std::size_t i : c.residual)
    if (s[i] > tol || t[i] > tol) out.support_ok = false;
  for (const auto& coterie : c.coteries) {
    double sum_s = 0.0;
    double sum_t = 0.0;
    for (std::size_t i : coterie) {
      sum_s += s[i];
      sum_t += t[i];
    }
    if (std::abs(sum_s - sum_t) > tol) out.support_ok = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Extension and supremal type

Extension epsilon_extension(double gap, const MetricSummary& summary,
                            double p) {
  if (summary.n_points < 3)
    throw Error(ErrorKind::InvalidArgument,
                "epsilon extension needs at least 3 points");
  if (!(gap > 0.0))
    throw Error(ErrorKind::InvalidArgument,
                "epsilon extension needs a positive gap");
  if (!(p >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "epsilon extension needs p >= 0");
  Extension out;
  if (summary.aspect_ratio <= 1.0 + kRelativeTolerance) {
    out.unbounded = true;
    return out;
  }
  const double scale = convention_pow(summary.diameter, p) * summary.gamma_n;
  out.epsilon = std::log1p(gap / scale) / std::log(summary.aspect_ratio);
  return out;
}

SupremalType estimate_supremal_negtype(const DistanceMatrix& d, double p_max,
                                       double tol) {
  if (!(p_max > 0.0) || !(tol > 0.0))
    throw Error(ErrorKind::InvalidArgument,
                "supremal type search needs p_max > 0 and tol > 0");
  const ValidationReport report = validate_ultrametric(d);
  if (!report.is_metric)
    throw Error(ErrorKind::InvalidInput,
                "supremal negative type requires a metric");
  SupremalType out;
  if (report.is_ultrametric) {
    out.infinite = true;
    return out;
  }
  // Negative type holds on an interval [0, p*], so the predicate is monotone.
  constexpr double kPsdTolerance = 1e-12;
  auto has_type = [&](double p) {
    return psd_check(build_gramian(d, p), kPsdTolerance);
  };
  if (has_type(p_max)) {
    out.at_least = true;
    out.value = p_max;
    return out;
  }
  double lo = 0.0;
  double hi = p_max;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (has_type(mid) ? lo : hi) = mid;
  }
  out.value = 0.5 * (lo + hi);
  return out;
}

}  // namespace ultragram
