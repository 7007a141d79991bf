#include <algorithm>
#include <cmath>
#include <random>

#include "ultragram/error.hpp"
#include "ultragram/metric.hpp"

namespace ultragram {

namespace {

class HierarchyBuilder {
 public:
  HierarchyBuilder(std::span<const double> levels, std::size_t n,
                   std::uint64_t seed)
      : levels_(levels), rows_(n, std::vector<double>(n, 0.0)), rng_(seed) {}

  // Points of one subtree whose root sits at levels_[level].
  void split(std::vector<std::size_t> points, std::size_t level) {
    const std::size_t m = points.size();
    if (m <= 1) return;
    if (level == 0) {
      set_across({points}, levels_[0]);
      return;
    }

    std::uniform_int_distribution<std::size_t> group_count(2, m);
    const std::size_t k = group_count(rng_);
    std::shuffle(points.begin(), points.end(), rng_);
    std::vector<std::vector<std::size_t>> groups(k);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    for (std::size_t idx = 0; idx < m; ++idx)
      groups[idx < k ? idx : pick(rng_)].push_back(points[idx]);

    set_across(groups, levels_[level]);
    std::uniform_int_distribution<std::size_t> child_level(0, level - 1);
    for (auto& g : groups) split(std::move(g), child_level(rng_));
  }

  std::vector<std::vector<double>> take() { return std::move(rows_); }

 private:
  // Distance `value` between every pair drawn from different groups; a single
  // group is treated as singletons.
  void set_across(const std::vector<std::vector<std::size_t>>& groups,
                  double value) {
    if (groups.size() == 1) {
      const auto& g = groups.front();
      for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = a + 1; b < g.size(); ++b) set(g[a], g[b], value);
      return;
    }
    for (std::size_t ga = 0; ga < groups.size(); ++ga)
      for (std::size_t gb = ga + 1; gb < groups.size(); ++gb)
        for (std::size_t a : groups[ga])
          for (std::size_t b : groups[gb]) set(a, b, value);
  }

  void set(std::size_t a, std::size_t b, double value) {
    rows_[a][b] = value;
    rows_[b][a] = value;
  }

  std::span<const double> levels_;
  std::vector<std::vector<double>> rows_;
  std::mt19937_64 rng_;
};

}  // namespace

DistanceMatrix generate_random_ultrametric(std::size_t n_points,
                                           std::span<const double> levels,
                                           std::uint64_t seed) {
  if (n_points < 3)
    throw Error(ErrorKind::InvalidArgument,
                "generate_random_ultrametric needs at least 3 points");
  if (levels.empty())
    throw Error(ErrorKind::InvalidArgument, "at least one level is required");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (!(levels[k] > 0.0) || !std::isfinite(levels[k]))
      throw Error(ErrorKind::InvalidArgument, "levels must be positive");
    if (k > 0 && !(levels[k] > levels[k - 1]))
      throw Error(ErrorKind::InvalidArgument,
                  "levels must be strictly increasing");
  }

  HierarchyBuilder builder(levels, n_points, seed);
  std::vector<std::size_t> points(n_points);
  for (std::size_t i = 0; i < n_points; ++i) points[i] = i;
  builder.split(std::move(points), levels.size() - 1);
  return DistanceMatrix::from_rows(builder.take());
}

}  // namespace ultragram
