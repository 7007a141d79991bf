// Cyclic Jacobi eigensolver for dense symmetric matrices.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ultragram/error.hpp"
#include "ultragram/gramian.hpp"

namespace ultragram {

namespace {

using Real = long double;

class JacobiState {
 public:
  explicit JacobiState(const SymMatrix& a)
      : n_(a.dim()), a_(n_ * n_), v_(n_ * n_, 0.0L) {
    for (std::size_t i = 0; i < n_ * n_; ++i) a_[i] = a.entries()[i];
    for (std::size_t i = 0; i < n_; ++i) v_[i * n_ + i] = 1.0L;
  }

  Real off_norm() const {
    Real sum = 0.0L;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (i != j) sum += at(i, j) * at(i, j);
    return std::sqrt(sum);
  }

  // One pass over all pairs p < q in row-cyclic order.
  void sweep() {
    constexpr Real kNegligible = std::numeric_limits<Real>::epsilon();
    for (std::size_t p = 0; p + 1 < n_; ++p) {
      for (std::size_t q = p + 1; q < n_; ++q) {
        const Real apq = at(p, q);
        if (apq == 0.0L) continue;
        const Real app = at(p, p);
        const Real aqq = at(q, q);
        // Entries negligible against both diagonals are dropped outright;
        // this keeps small eigenvalues relatively accurate.
        if (std::abs(apq) <= kNegligible * std::sqrt(std::abs(app * aqq)) *
                                 Real(0.5)) {
          at(p, q) = at(q, p) = 0.0L;
          continue;
        }
        rotate(p, q, app, aqq, apq);
      }
    }
  }

  Real diag(std::size_t i) const { return at(i, i); }
  Real vec(std::size_t row, std::size_t col) const { return v_[row * n_ + col]; }

 private:
  Real& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  Real at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  void rotate(std::size_t p, std::size_t q, Real app, Real aqq, Real apq) {
    const Real theta = (aqq - app) / (2.0L * apq);
    Real t;
    if (std::abs(theta) > Real(1e30)) {
      t = 0.5L / theta;
    } else {
      t = 1.0L / (std::abs(theta) + std::sqrt(theta * theta + 1.0L));
      if (theta < 0.0L) t = -t;
    }
    const Real c = 1.0L / std::sqrt(t * t + 1.0L);
    const Real s = t * c;

    for (std::size_t r = 0; r < n_; ++r) {
      if (r == p || r == q) continue;
      const Real arp = at(r, p);
      const Real arq = at(r, q);
      at(r, p) = at(p, r) = c * arp - s * arq;
      at(r, q) = at(q, r) = s * arp + c * arq;
    }
    at(p, p) = app - t * apq;
    at(q, q) = aqq + t * apq;
    at(p, q) = at(q, p) = 0.0L;

    for (std::size_t r = 0; r < n_; ++r) {
      const Real vrp = v_[r * n_ + p];
      const Real vrq = v_[r * n_ + q];
      v_[r * n_ + p] = c * vrp - s * vrq;
      v_[r * n_ + q] = s * vrp + c * vrq;
    }
  }

  std::size_t n_;
  std::vector<Real> a_;
  std::vector<Real> v_;
};

}  // namespace

Spectrum sym_eigen(const SymMatrix& a, double tol) {
  if (!(tol > 0.0))
    throw Error(ErrorKind::InvalidArgument, "sym_eigen requires tol > 0");
  const std::size_t n = a.dim();
  Spectrum out;
  if (n == 0) return out;

  JacobiState state(a);
  const Real target = static_cast<Real>(tol) * a.frobenius_norm();
  Real off = state.off_norm();
  int sweeps = 0;
  while (off > target) {
    if (sweeps == kJacobiMaxSweeps) {
      std::ostringstream os;
      os << "Jacobi eigensolver did not converge after " << kJacobiMaxSweeps
         << " sweeps (off-diagonal norm " << static_cast<double>(off) << ")";
      throw Error(ErrorKind::Numeric, os.str());
    }
    state.sweep();
    ++sweeps;
    off = state.off_norm();
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return state.diag(x) < state.diag(y);
  });

  out.sweeps = sweeps;
  out.eigenvalues.resize(n);
  out.eigenvectors.assign(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = static_cast<double>(state.diag(order[k]));
    for (std::size_t r = 0; r < n; ++r)
      out.eigenvectors[k][r] = static_cast<double>(state.vec(r, order[k]));
  }

  double residual = static_cast<double>(off);
  for (std::size_t k = 0; k < n; ++k) {
    const auto av = a.multiply(out.eigenvectors[k]);
    for (std::size_t r = 0; r < n; ++r)
      residual = std::max(
          residual, std::abs(av[r] - out.eigenvalues[k] * out.eigenvectors[k][r]));
  }
  out.residual_bound = residual;
  return out;
}

}  // namespace ultragram
