#include "ultragram/gramian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ultragram/error.hpp"

namespace ultragram {

SymMatrix::SymMatrix(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim * dim)
    throw Error(ErrorKind::InvalidArgument, "SymMatrix: wrong entry count");
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const double a = entries_[i * dim_ + j];
      const double b = entries_[j * dim_ + i];
      if (a != b) set(i, j, 0.5 * (a + b));
    }
  }
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n)
      throw Error(ErrorKind::InvalidArgument, "SymMatrix: rows not square");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return SymMatrix(n, std::move(entries));
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

double SymMatrix::inf_norm() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

double SymMatrix::frobenius_norm() const noexcept {
  double sum = 0.0;
  for (double v : entries_) sum += v * v;
  return std::sqrt(sum);
}

std::vector<double> SymMatrix::multiply(std::span<const double> x) const {
  if (x.size() != dim_)
    throw Error(ErrorKind::InvalidArgument, "SymMatrix: vector length mismatch");
  std::vector<double> y(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double SymMatrix::quadratic_form(std::span<const double> x) const {
  const auto y = multiply(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) acc += x[i] * y[i];
  return acc;
}

SymMatrix build_gramian(const DistanceMatrix& d, double p) {
  if (!(p >= 0.0) || !std::isfinite(p))
    throw Error(ErrorKind::InvalidArgument, "build_gramian requires p >= 0");
  if (d.size() < 2)
    throw Error(ErrorKind::InvalidArgument,
                "build_gramian needs at least 2 points");
  const std::size_t n = d.size() - 1;
  std::vector<double> base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = convention_pow(d(i + 1, 0), p);

  SymMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.set(i, i, base[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = convention_pow(d(i + 1, j + 1), p);
      g.set(i, j, 0.5 * ((base[i] + base[j]) - dij));
    }
  }
  for (std::size_t i = 0; i < g.entries().size(); ++i) {
    if (!std::isfinite(g.entries()[i]))
      throw Error(ErrorKind::Numeric, "Gramian overflows at this p");
  }
  return g;
}

MinEigenpair min_eigenpair(const SymMatrix& a, double cluster_tol) {
  MinEigenpair out;
  if (a.dim() == 0) return out;
  Spectrum spec = sym_eigen(a);
  out.lambda_min = spec.eigenvalues.front();
  const double window = cluster_tol * std::max(1.0, a.inf_norm());
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    if (spec.eigenvalues[k] - out.lambda_min <= window)
      out.eigenspace.push_back(std::move(spec.eigenvectors[k]));
  }
  return out;
}

bool psd_check(const SymMatrix& a, double tol) {
  if (a.dim() == 0) return true;
  const Spectrum spec = sym_eigen(a);
  return spec.eigenvalues.front() >= -tol * std::max(1.0, a.inf_norm());
}

std::vector<std::vector<double>> hilbert_embedding(const DistanceMatrix& d,
                                                   double p) {
  const SymMatrix g = build_gramian(d, p);
  const std::size_t n = g.dim();
  const Spectrum spec = sym_eigen(g);
  const double clamp = kClampTolerance * std::max(1.0, g.inf_norm());

  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = spec.eigenvalues[k];
    if (lambda < -clamp) {
      std::ostringstream os;
      os.precision(17);
      os << "Gramian is not positive semidefinite at p = " << p
         << " (eigenvalue " << lambda << "); no isometric embedding exists";
      throw Error(ErrorKind::Numeric, os.str());
    }
    roots[k] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }

  std::vector<std::vector<double>> coords(n + 1, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      coords[i + 1][k] = spec.eigenvectors[k][i] * roots[k];
  return coords;
}

}  // namespace ultragram
