#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ultragram/metric.hpp"
#include "ultragram/ultrametric.hpp"

namespace ultragram::testing {

// The 7-point ultrametric with coteries {x1,x2}, {x3,x4}, {x5,x6}.
inline DistanceMatrix example7() {
  return DistanceMatrix::from_rows({{0, 3, 3, 4, 4, 4, 4},
                                    {3, 0, 1, 4, 4, 4, 4},
                                    {3, 1, 0, 4, 4, 4, 4},
                                    {4, 4, 4, 0, 1, 2, 2},
                                    {4, 4, 4, 1, 0, 2, 2},
                                    {4, 4, 4, 2, 2, 0, 1},
                                    {4, 4, 4, 2, 2, 1, 0}});
}

inline DistanceMatrix equilateral(std::size_t n, double a = 1.0) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, a));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 0.0;
  return DistanceMatrix::from_rows(rows);
}

inline DistanceMatrix triangle(double a, double b, double c) {
  // d(0,1) = a, d(1,2) = b, d(0,2) = c
  return DistanceMatrix::from_rows({{0, a, c}, {a, 0, b}, {c, b, 0}});
}

// d(x0,x1) = 1, d(x0,x2) = d(x1,x2) = 2: one coterie {x0,x1}.
inline DistanceMatrix degenerate3() { return triangle(1, 2, 2); }

// Three collinear points a-b-c, base point at the endpoint a.
inline DistanceMatrix collinear112() { return triangle(1, 1, 2); }

struct CorpusOptions {
  std::size_t min_points = 3;
  std::size_t max_points = 30;
  std::size_t max_levels = 6;
  double min_alpha1 = 0.5;
  double max_alpha1 = 2.0;
  // Consecutive levels differ by a factor drawn from this range, which bounds
  // alpha_l / alpha_1 by 1.3^5 < 4.
  double min_ratio = 1.2;
  double max_ratio = 1.3;
};

// Random ultrametric, relabelled so that it is nondegenerate.
inline DistanceMatrix random_nondegenerate(std::mt19937_64& rng,
                                           const CorpusOptions& o = {}) {
  std::uniform_int_distribution<std::size_t> points(o.min_points, o.max_points);
  std::uniform_int_distribution<std::size_t> levels(1, o.max_levels);
  std::uniform_real_distribution<double> alpha1(o.min_alpha1, o.max_alpha1);
  std::uniform_real_distribution<double> ratio(o.min_ratio, o.max_ratio);
  const std::size_t n = points(rng);
  const std::size_t l = levels(rng);
  std::vector<double> lv{alpha1(rng)};
  for (std::size_t k = 1; k < l; ++k) lv.push_back(lv.back() * ratio(rng));
  return reorder_nondegenerate(generate_random_ultrametric(n, lv, rng())).matrix;
}

inline std::vector<DistanceMatrix> nondegenerate_corpus(
    std::size_t count, std::uint64_t seed, const CorpusOptions& o = {}) {
  std::mt19937_64 rng(seed);
  std::vector<DistanceMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_nondegenerate(rng, o));
  return out;
}

// Random Euclidean point cloud distances (not ultrametric in general).
inline DistanceMatrix random_euclidean(std::mt19937_64& rng, std::size_t n,
                                       std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& c : p) c = g(rng);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      rows[i][j] = std::sqrt(s);
    }
  return DistanceMatrix::from_rows(rows);
}

}  // namespace ultragram::testing
