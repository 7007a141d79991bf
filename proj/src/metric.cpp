#include "ultragram/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ultragram/error.hpp"

namespace ultragram {

namespace {

std::string entry_name(std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "x" + std::to_string(i);
  return labels;
}

}  // namespace

double convention_pow(double x, double p) {
  if (x == 0.0) return 0.0;
  if (p == 1.0) return x;
  return std::pow(x, p);
}

DistanceMatrix DistanceMatrix::from_rows(
    const std::vector<std::vector<double>>& rows,
    std::vector<std::string> labels) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "distance matrix is empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      std::ostringstream os;
      os << "distance matrix is not square: row " << i << " has "
         << rows[i].size() << " entries, expected " << n;
      throw Error(ErrorKind::InvalidInput, os.str());
    }
  }
  if (labels.empty()) {
    labels = default_labels(n);
  } else if (labels.size() != n) {
    throw Error(ErrorKind::InvalidInput,
                "label count " + std::to_string(labels.size()) +
                    " does not match matrix size " + std::to_string(n));
  }

  std::vector<double> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v))
        throw Error(ErrorKind::InvalidInput,
                    "non-finite entry at " + entry_name(i, j));
      if (v < 0.0)
        throw Error(ErrorKind::InvalidInput,
                    "negative entry at " + entry_name(i, j));
      if (i == j && v != 0.0)
        throw Error(ErrorKind::InvalidInput,
                    "nonzero diagonal entry at " + entry_name(i, i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = rows[i][j];
      const double b = rows[j][i];
      if (std::abs(a - b) > kSymmetryTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "asymmetric entries " << entry_name(i, j) << "=" << a << " and "
           << entry_name(j, i) << "=" << b;
        throw Error(ErrorKind::InvalidInput, os.str());
      }
      const double v = (a == b) ? a : 0.5 * (a + b);
      if (v == 0.0)
        throw Error(ErrorKind::InvalidInput,
                    "zero distance between distinct points " +
                        entry_name(i, j));
      entries[i * n + j] = v;
      entries[j * n + i] = v;
    }
  }
  return DistanceMatrix(n, std::move(entries), std::move(labels));
}

std::vector<std::vector<double>> DistanceMatrix::rows() const {
  std::vector<std::vector<double>> out(size_, std::vector<double>(size_));
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

double DistanceMatrix::max_entry() const noexcept {
  return entries_.empty() ? 0.0
                          : *std::max_element(entries_.begin(), entries_.end());
}

double DistanceMatrix::min_nonzero() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = i + 1; j < size_; ++j)
      if (m == 0.0 || (*this)(i, j) < m) m = (*this)(i, j);
  return m;
}

DistanceMatrix DistanceMatrix::permuted(
    std::span<const std::size_t> perm) const {
  if (perm.size() != size_)
    throw Error(ErrorKind::InvalidArgument, "permutation has wrong length");
  std::vector<bool> seen(size_, false);
  for (std::size_t p : perm) {
    if (p >= size_ || seen[p])
      throw Error(ErrorKind::InvalidArgument, "not a permutation");
    seen[p] = true;
  }
  std::vector<double> entries(size_ * size_);
  std::vector<std::string> labels(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    labels[i] = labels_[perm[i]];
    for (std::size_t j = 0; j < size_; ++j)
      entries[i * size_ + j] = (*this)(perm[i], perm[j]);
  }
  return DistanceMatrix(size_, std::move(entries), std::move(labels));
}

namespace {

ValidationReport scan_triples(const DistanceMatrix& d, bool witness_strong) {
  ValidationReport report;
  const double tol = kRelativeTolerance * d.max_entry();
  report.tolerance_used = tol;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = d(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double dik = d(i, k);
        const double dkj = d(k, j);
        const bool triangle_ok = dij <= dik + dkj + tol;
        const bool strong_ok = dij <= std::max(dik, dkj) + tol;
        if (!triangle_ok) report.is_metric = false;
        if (!strong_ok) report.is_ultrametric = false;
        if (witness_strong ? !strong_ok : !triangle_ok) {
          report.violations.push_back(
              {i, j, k,
               triangle_ok ? ViolationKind::StrongTriangle
                           : ViolationKind::Triangle});
        }
      }
    }
  }
  return report;
}

}  // namespace

ValidationReport validate_metric(const DistanceMatrix& d) {
  return scan_triples(d, false);
}

ValidationReport validate_ultrametric(const DistanceMatrix& d) {
  return scan_triples(d, true);
}

std::optional<std::size_t> DistanceSpectrum::index_of(double value) const {
  auto it = std::lower_bound(alphas.begin(), alphas.end(),
                             value - merge_tolerance);
  if (it != alphas.end() && std::abs(*it - value) <= merge_tolerance)
    return static_cast<std::size_t>(it - alphas.begin());
  return std::nullopt;
}

DistanceSpectrum distinct_distances(const DistanceMatrix& d) {
  DistanceSpectrum spectrum;
  spectrum.merge_tolerance = kRelativeTolerance * d.max_entry();
  std::vector<double> values;
  const std::size_t n = d.size();
  values.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) values.push_back(d(i, j));
  std::sort(values.begin(), values.end());

  // Each group is represented by its smallest member.
  for (double v : values) {
    if (spectrum.alphas.empty() ||
        v - spectrum.alphas.back() > spectrum.merge_tolerance) {
      spectrum.alphas.push_back(v);
      spectrum.multiplicity.push_back(1);
    } else {
      ++spectrum.multiplicity.back();
    }
  }
  return spectrum;
}

DistanceMatrix power_transform(const DistanceMatrix& d, double p) {
  if (!(p >= 0.0) || !std::isfinite(p))
    throw Error(ErrorKind::InvalidArgument,
                "power_transform requires a finite p >= 0");
  std::vector<double> entries(d.entries().begin(), d.entries().end());
  for (std::size_t idx = 0; idx < entries.size(); ++idx) {
    const double v = convention_pow(entries[idx], p);
    if (entries[idx] != 0.0 && (!std::isfinite(v) || v == 0.0))
      throw Error(ErrorKind::Numeric,
                  "d^p overflows or underflows at p = " + std::to_string(p));
    entries[idx] = v;
  }
  return DistanceMatrix(d.size(), std::move(entries), d.labels());
}

}  // namespace ultragram
