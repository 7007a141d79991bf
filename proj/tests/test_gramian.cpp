#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "ultragram/error.hpp"
#include "ultragram/gramian.hpp"

using namespace ultragram;
using namespace ultragram::testing;

namespace {

SymMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  SymMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, g(rng));
  return a;
}

double dist(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE("gramian_spectra") {

TEST_CASE("Gramian entries of the 7-point fixture") {
  const auto g = build_gramian(example7(), 1);
  REQUIRE(g.dim() == 6);
  CHECK(g(0, 0) == 3.0);
  CHECK(g(0, 1) == 2.5);
  CHECK(g(0, 2) == 1.5);
}

TEST_CASE("Gramian matches the definition entrywise") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = random_euclidean(rng, 2 + trial % 9, 3);
    for (double p : {0.0, 0.5, 1.0, 2.0, 3.7}) {
      const auto g = build_gramian(d, p);
      for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j)
          CHECK(g(i, j) == doctest::Approx(oracle_gramian_entry(d, p, i + 1, j + 1))
                               .epsilon(1e-14));
      if (p == 2.0)
        for (std::size_t i = 0; i < g.dim(); ++i)
          CHECK(g(i, i) == doctest::Approx(d(i + 1, 0) * d(i + 1, 0)));
    }
  }
}

TEST_CASE("equilateral Gramian") {
  const auto g = build_gramian(equilateral(3), 1);
  CHECK(g(0, 0) == 1.0);
  CHECK(g(0, 1) == 0.5);
  CHECK(g(1, 1) == 1.0);
}

TEST_CASE("sym_eigen small cases") {
  const auto s = sym_eigen(SymMatrix::from_rows({{1, 0.5}, {0.5, 1}}));
  const auto [lo, hi] = oracle_eigen2(1, 0.5, 1);
  CHECK(s.eigenvalues[0] == doctest::Approx(lo).epsilon(1e-15));
  CHECK(s.eigenvalues[1] == doctest::Approx(hi).epsilon(1e-15));

  const auto diag = sym_eigen(SymMatrix::from_rows({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  CHECK(diag.eigenvalues == std::vector<double>{1, 2, 3});
  CHECK(std::abs(diag.eigenvectors[0][1]) == 1.0);
  CHECK(std::abs(diag.eigenvectors[1][2]) == 1.0);
  CHECK(std::abs(diag.eigenvectors[2][0]) == 1.0);

  const auto g1 = sym_eigen(build_gramian(example7(), 1));
  CHECK(std::abs(g1.eigenvalues.front() - 0.5) <= 1e-10);
}

TEST_CASE("sym_eigen agrees with an independent solver and reconstructs") {
  std::mt19937_64 rng(99);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 13u, 21u, 34u, 50u}) {
    const auto a = random_symmetric(rng, n);
    const auto s = sym_eigen(a);
    const auto ref = oracle_eigenvalues(a);
    const double scale = a.inf_norm();
    CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
    CHECK(inf_norm_diff(s.eigenvalues, ref) <= 1e-12 * scale);

    double worst_rec = 0.0, worst_orth = 0.0, worst_res = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double rec = 0.0, dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          rec += s.eigenvectors[k][i] * s.eigenvalues[k] * s.eigenvectors[k][j];
          dot += s.eigenvectors[i][k] * s.eigenvectors[j][k];
        }
        worst_rec = std::max(worst_rec, std::abs(rec - a(i, j)));
        worst_orth = std::max(worst_orth, std::abs(dot - (i == j ? 1.0 : 0.0)));
      }
    for (std::size_t k = 0; k < n; ++k)
      worst_res = std::max(worst_res, eigen_residual(a, s.eigenvectors[k], s.eigenvalues[k]));
    CHECK(worst_rec <= 1e-10 * scale);
    CHECK(worst_orth <= 1e-10);
    CHECK(worst_res <= s.residual_bound);
  }
}

TEST_CASE("min_eigenpair") {
  const auto m = min_eigenpair(build_gramian(example7(), 1), 1e-8);
  CHECK(std::abs(m.lambda_min - 0.5) <= 1e-10);
  CHECK(m.eigenspace.size() == 3);

  const auto two = min_eigenpair(SymMatrix::from_rows({{1, 0.5}, {0.5, 1}}));
  CHECK(two.lambda_min == doctest::Approx(0.5));
  REQUIRE(two.eigenspace.size() == 1);
  const auto& v = two.eigenspace.front();
  CHECK(std::abs(v[0] + v[1]) <= 1e-14);
  CHECK(std::abs(std::abs(v[0]) - std::sqrt(0.5)) <= 1e-14);

  const auto id = min_eigenpair(SymMatrix::identity(4));
  CHECK(id.lambda_min == 1.0);
  CHECK(id.eigenspace.size() == 4);
}

TEST_CASE("psd_check") {
  CHECK_FALSE(psd_check(SymMatrix::from_rows({{0, 1}, {1, 0}}), 1e-12));
  // the p = 2 Gramian of the collinear 1,1,2 space is singular
  const auto g2 = build_gramian(collinear112(), 2);
  CHECK(g2(0, 0) == 1.0);
  CHECK(g2(0, 1) == 2.0);
  CHECK(g2(1, 1) == 4.0);
  CHECK(psd_check(g2, 0.0));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = random_nondegenerate(rng);
    for (double p : {0.0, 0.5, 1.0, 4.0, 9.0, 20.0})
      CHECK(psd_check(build_gramian(d, p), 1e-12));
  }
}

TEST_CASE("quadratic-form identity <G eta, eta> = -1/2 sum d^p xi xi") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = trial % 2 ? random_nondegenerate(rng) : random_euclidean(rng, 3 + trial % 10, 4);
    for (double p : {0.5, 1.0, 2.0}) {
      std::vector<double> xi(d.size());
      double sum = 0.0;
      for (std::size_t i = 1; i < xi.size(); ++i) sum += xi[i] = g(rng);
      xi[0] = -sum;
      const std::vector<double> eta(xi.begin() + 1, xi.end());
      double direct = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < xi.size(); ++i)
        for (std::size_t j = 0; j < xi.size(); ++j) {
          const double term = convention_pow(d(i, j), p) * xi[i] * xi[j];
          direct += term;
          scale += std::abs(term);
        }
      const double lhs = build_gramian(d, p).quadratic_form(eta);
      CHECK(std::abs(lhs + 0.5 * direct) <= 1e-10 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("hilbert_embedding is an isometry for d^{p/2}") {
  SUBCASE("unit equilateral triangle") {
    const auto e = hilbert_embedding(equilateral(3), 2);
    REQUIRE(e.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j)
        CHECK(dist(e[i], e[j]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::all_of(e[0].begin(), e[0].end(), [](double c) { return c == 0.0; }));
  }
  SUBCASE("7-point fixture and random spaces") {
    std::mt19937_64 rng(12);
    std::vector<DistanceMatrix> spaces{example7()};
    for (int k = 0; k < 15; ++k) spaces.push_back(random_nondegenerate(rng));
    for (int k = 0; k < 10; ++k) spaces.push_back(random_euclidean(rng, 3 + k, 3));
    for (const auto& d : spaces)
      for (double p : {1.0, 2.0}) {
        const auto e = hilbert_embedding(d, p);
        REQUIRE(e.size() == d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
          for (std::size_t j = i + 1; j < d.size(); ++j) {
            const double want = std::pow(d(i, j), p / 2);
            CHECK(std::abs(dist(e[i], e[j]) - want) <= 1e-8 * want);
          }
      }
  }
  SUBCASE("ultrametrics embed at p = 10") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 10; ++k) CHECK_NOTHROW(hilbert_embedding(random_nondegenerate(rng), 10));
  }
  SUBCASE("non-PSD Gramian is refused") {
    try {
      hilbert_embedding(collinear112(), 3);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Numeric);
    }
  }
}

TEST_CASE("build_gramian rejects bad arguments") {
  CHECK_THROWS_AS(build_gramian(example7(), -0.5), Error);
}

}  // TEST_SUITE
