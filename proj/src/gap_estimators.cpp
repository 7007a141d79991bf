// Sample-then-descend estimators for the two negative type gaps.
//
// Both objectives are degree-0 homogeneous functions of a mean-zero vector
// xi in R^{n+1}; sign-splitting xi gives the weight vector (s, t). Pair moves
// xi_i += h, xi_j -= h keep the mean at zero, so every iterate stays inside
// the weight-vector cone and only the normalization has to be restored.

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "ultragram/error.hpp"
#include "ultragram/negtype.hpp"

namespace ultragram {

namespace {

constexpr int kDescentIterations = 50;
constexpr double kInitialStep = 0.5;
constexpr double kStepDecay = 0.7;

using Vec = std::vector<double>;

// Removes floating-point drift from the zero-sum constraint.
void recenter(Vec& xi) {
  long double mean = 0.0L;
  for (double v : xi) mean += v;
  mean /= static_cast<long double>(xi.size());
  for (auto& v : xi) v = static_cast<double>(v - mean);
}

std::vector<long double> power_table(const DistanceMatrix& d, double p) {
  const std::size_t n = d.size();
  std::vector<long double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = convention_pow(d(i, j), p);
  return out;
}

// -sum_{i,j} d_ij^p xi_i xi_j, which equals gamma(p) of the sign split.
long double neg_quadratic(const std::vector<long double>& powers,
                          const Vec& xi) {
  const std::size_t n = xi.size();
  long double acc = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    if (xi[i] == 0.0) continue;
    long double row = 0.0L;
    for (std::size_t j = 0; j < n; ++j) row += powers[i * n + j] * xi[j];
    acc += row * xi[i];
  }
  return -acc;
}

struct Problem {
  // Objective of a normalized, mean-zero vector.
  std::function<double(const Vec&)> objective;
  // Rescales onto the normalization slice; false if xi has no usable mass.
  std::function<bool(Vec&)> normalize;
};

struct Minimum {
  Vec xi;
  double value;
};

Minimum sample_and_descend(std::size_t n_points, const Problem& problem,
                           std::size_t samples, std::uint64_t seed) {
  if (samples == 0)
    throw Error(ErrorKind::InvalidArgument, "at least one sample is required");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Minimum best{Vec(n_points, 0.0), std::numeric_limits<double>::infinity()};
  Vec xi(n_points);
  for (std::size_t draw = 0; draw < samples; ++draw) {
    double mean = 0.0;
    for (auto& v : xi) {
      v = gauss(rng);
      mean += v;
    }
    mean /= static_cast<double>(n_points);
    for (auto& v : xi) v -= mean;
    if (!problem.normalize(xi)) continue;
    const double value = problem.objective(xi);
    if (value < best.value) best = {xi, value};
  }
  if (!std::isfinite(best.value))
    throw Error(ErrorKind::Numeric, "gap estimator drew no usable sample");

  double step = kInitialStep;
  Vec trial(n_points);
  for (int iter = 0; iter < kDescentIterations; ++iter) {
    for (std::size_t i = 0; i < n_points; ++i) {
      for (std::size_t j = i + 1; j < n_points; ++j) {
        for (double sign : {1.0, -1.0}) {
          trial = best.xi;
          trial[i] += sign * step;
          trial[j] -= sign * step;
          if (!problem.normalize(trial)) continue;
          const double value = problem.objective(trial);
          if (value < best.value) best = {trial, value};
        }
      }
    }
    step *= kStepDecay;
  }
  return best;
}

}  // namespace

GapEstimate estimate_gap_S(const DistanceMatrix& d, double p,
                           std::size_t samples, std::uint64_t seed) {
  if (!(p >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "estimate_gap_S needs p >= 0");
  if (d.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "estimate_gap_S needs 2 points");
  const auto powers = power_table(d, p);

  Problem problem;
  problem.normalize = [](Vec& xi) {
    recenter(xi);
    long double q = 0.0L;
    for (std::size_t i = 1; i < xi.size(); ++i)
      q += static_cast<long double>(xi[i]) * xi[i];
    if (!(q > 0.0L)) return false;
    const double scale = static_cast<double>(1.0L / std::sqrt(q));
    for (auto& v : xi) v *= scale;
    return true;
  };
  // Half of gamma(p), divided by the slice norm to absorb rounding in xi.
  problem.objective = [&powers](const Vec& xi) {
    long double q = 0.0L;
    for (std::size_t i = 1; i < xi.size(); ++i)
      q += static_cast<long double>(xi[i]) * xi[i];
    return static_cast<double>(0.5L * neg_quadratic(powers, xi) / q);
  };

  Minimum m = sample_and_descend(d.size(), problem, samples, seed);
  return {m.value, SNormalized::normalize(WeightVector::sign_split(m.xi))};
}

double estimate_gap_classic(const DistanceMatrix& d, double p,
                            std::size_t samples, std::uint64_t seed) {
  if (!(p >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "estimate_gap_classic needs p >= 0");
  if (d.size() < 2)
    throw Error(ErrorKind::InvalidArgument,
                "estimate_gap_classic needs 2 points");
  const auto powers = power_table(d, p);

  auto l1 = [](const Vec& xi) {
    long double acc = 0.0L;
    for (double v : xi) acc += std::abs(static_cast<long double>(v));
    return acc;
  };
  Problem problem;
  problem.normalize = [l1](Vec& xi) {
    recenter(xi);
    const long double norm = l1(xi);
    if (!(norm > 0.0L)) return false;
    const double scale = static_cast<double>(1.0L / norm);
    for (auto& v : xi) v *= scale;
    return true;
  };
  problem.objective = [&powers, l1](const Vec& xi) {
    const long double norm = l1(xi);
    return static_cast<double>(2.0L * neg_quadratic(powers, xi) /
                               (norm * norm));
  };

  return sample_and_descend(d.size(), problem, samples, seed).value;
}

}  // namespace ultragram
