#include "ultragram/ultrametric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ultragram/error.hpp"

namespace ultragram {

namespace {

void require_ultrametric(const DistanceMatrix& d) {
  const ValidationReport report = validate_ultrametric(d);
  if (report.is_ultrametric) return;
  const Violation& v = report.violations.front();
  std::ostringstream os;
  os << "not an ultrametric: d(" << v.i << "," << v.j << ") exceeds max(d("
     << v.i << "," << v.k << "), d(" << v.k << "," << v.j << "))";
  throw Error(ErrorKind::NotUltrametric, os.str());
}

void require_nondegenerate(const DistanceMatrix& d, const char* what) {
  if (is_degenerate(d))
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) +
                    ": degenerate labelling (reorder the points first)");
}

}  // namespace

std::optional<std::size_t> CoterieDecomposition::coterie_of(
    std::size_t i) const {
  for (std::size_t j = 0; j < coteries.size(); ++j)
    if (std::binary_search(coteries[j].begin(), coteries[j].end(), i)) return j;
  return std::nullopt;
}

std::size_t CoterieDecomposition::covered() const noexcept {
  std::size_t total = 0;
  for (const auto& b : coteries) total += b.size();
  return total;
}

CoterieDecomposition find_coteries(const DistanceMatrix& d) {
  if (d.size() < 2)
    throw Error(ErrorKind::InvalidArgument,
                "find_coteries needs at least 2 points");
  require_ultrametric(d);

  CoterieDecomposition out;
  out.alpha1 = d.min_nonzero();
  const double radius = out.alpha1 + kRelativeTolerance * d.max_entry();
  const std::size_t n = d.size();
  std::vector<bool> assigned(n, false);
  for (std::size_t z = 0; z < n; ++z) {
    if (assigned[z]) continue;
    std::vector<std::size_t> ball;
    for (std::size_t x = 0; x < n; ++x)
      if (x == z || d(x, z) <= radius) ball.push_back(x);
    for (std::size_t x : ball) assigned[x] = true;
    if (ball.size() > 1)
      out.coteries.push_back(std::move(ball));
    else
      out.residual.push_back(z);
  }
  return out;
}

bool is_degenerate(const DistanceMatrix& d) {
  if (d.size() < 3)
    throw Error(ErrorKind::InvalidArgument,
                "degeneracy is defined for at least 3 points");
  const CoterieDecomposition c = find_coteries(d);
  return c.r() == 1 && c.coteries.front().size() == 2 &&
         c.coteries.front().front() == 0;
}

Reordering reorder_nondegenerate(const DistanceMatrix& d) {
  std::vector<std::size_t> perm(d.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  if (!is_degenerate(d)) return {d, std::move(perm)};

  const CoterieDecomposition c = find_coteries(d);
  const auto& coterie = c.coteries.front();
  std::size_t outside = 1;
  while (std::binary_search(coterie.begin(), coterie.end(), outside)) ++outside;
  std::swap(perm[0], perm[outside]);
  return {d.permuted(perm), std::move(perm)};
}

double closed_form_min_eigenvalue(const DistanceMatrix& d, double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw Error(ErrorKind::InvalidArgument,
                "the closed-form minimum eigenvalue requires p > 0");
  require_nondegenerate(d, "closed_form_min_eigenvalue");
  return std::pow(d.min_nonzero(), p) / 2.0;
}

std::size_t eigenspace_dimension(const DistanceMatrix& d) {
  require_nondegenerate(d, "eigenspace_dimension");
  const CoterieDecomposition c = find_coteries(d);
  const bool base_in_coterie = c.coterie_of(0).has_value();
  return c.covered() - c.r() - (base_in_coterie ? 1 : 0);
}

EigenspaceDescription eigenspace_basis(const DistanceMatrix& d, double p) {
  EigenspaceDescription out;
  out.lambda_min = closed_form_min_eigenvalue(d, p);
  const CoterieDecomposition c = find_coteries(d);
  const std::size_t n = d.size() - 1;
  for (const auto& coterie : c.coteries) {
    const std::size_t k = coterie.front() == 0 ? coterie[1] : coterie.front();
    out.representatives.push_back(k);
    for (std::size_t i : coterie) {
      if (i == k || i == 0) continue;
      std::vector<double> v(n, 0.0);
      v[i - 1] = 1.0;
      v[k - 1] = -1.0;
      out.basis.push_back(std::move(v));
    }
  }
  out.dimension = out.basis.size();
  return out;
}

double default_membership_tolerance(std::span<const double> eta) {
  double inf = 0.0;
  for (double v : eta) inf = std::max(inf, std::abs(v));
  return 1e-9 * std::max(1.0, inf);
}

bool eigenspace_membership(const DistanceMatrix& d, std::span<const double> eta,
                           double tol) {
  if (eta.size() + 1 != d.size())
    throw Error(ErrorKind::InvalidArgument,
                "eigenspace_membership: eta has length " +
                    std::to_string(eta.size()) + ", expected " +
                    std::to_string(d.size() - 1));
  require_nondegenerate(d, "eigenspace_membership");
  const CoterieDecomposition c = find_coteries(d);

  std::vector<double> xi(d.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    xi[i + 1] = eta[i];
    sum += eta[i];
  }
  xi[0] = -sum;

  if (std::abs(xi[0]) > tol) return false;
  for (std::size_t i : c.residual)
    if (std::abs(xi[i]) > tol) return false;
  for (const auto& coterie : c.coteries) {
    double s = 0.0;
    for (std::size_t i : coterie) s += xi[i];
    if (std::abs(s) > tol) return false;
  }
  return true;
}

}  // namespace ultragram
