#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "ultragram/negtype.hpp"
#include "ultragram/ultrametric.hpp"

namespace ultragram::testing {

// Gaussian xi on all n+1 points, recentred, sign-split and put on the S slice.
inline SNormalized random_s_normalized(std::mt19937_64& rng, std::size_t n_points) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> xi(n_points);
  double mean = 0.0;
  for (auto& x : xi) mean += x = g(rng);
  mean /= static_cast<double>(n_points);
  for (auto& x : xi) x -= mean;
  return SNormalized::normalize(WeightVector::sign_split(xi));
}

// Random weights with zero mass on X_0 and balanced sums inside each coterie.
inline SNormalized random_coterie_balanced(std::mt19937_64& rng,
                                           const CoterieDecomposition& c,
                                           std::size_t n_points) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> s(n_points, 0.0), t(n_points, 0.0);
  bool any = false;
  for (const auto& coterie : c.coteries) {
    std::vector<std::size_t> members = coterie;
    std::shuffle(members.begin(), members.end(), rng);
    const std::size_t cut =
        std::uniform_int_distribution<std::size_t>(1, members.size() - 1)(rng);
    double ss = 0.0, tt = 0.0;
    for (std::size_t k = 0; k < cut; ++k) ss += s[members[k]] = u(rng);
    for (std::size_t k = cut; k < members.size(); ++k) tt += t[members[k]] = u(rng);
    for (std::size_t k = cut; k < members.size(); ++k) t[members[k]] *= ss / tt;
  }
  return SNormalized::normalize(WeightVector::make(std::move(s), std::move(t)));
}

}  // namespace ultragram::testing
