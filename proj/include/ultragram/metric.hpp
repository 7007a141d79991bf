#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ultragram {

// Absolute tolerance under which a pair d(i,j), d(j,i) is averaged on load.
inline constexpr double kSymmetryTolerance = 1e-12;
// Distances within kRelativeTolerance * max_entry are treated as equal.
inline constexpr double kRelativeTolerance = 1e-12;

/// x^p with the convention 0^0 = 0.
double convention_pow(double x, double p);

/// A finite metric space (X, d) on labelled points x_0..x_n, stored densely.
///
/// Construction validates the type invariants: square shape, finite
/// nonnegative entries, zero diagonal, strictly positive off-diagonal and
/// symmetry. Pairs that disagree by at most kSymmetryTolerance are averaged;
/// larger disagreements are rejected. Metric axioms beyond these are checked
/// separately by validate_metric.
class DistanceMatrix {
 public:
  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                  std::vector<std::string> labels = {});

  /// Number of points, n + 1.
  std::size_t size() const noexcept { return size_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * size_ + j];
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::span<const double> entries() const noexcept { return entries_; }
  std::vector<std::vector<double>> rows() const;

  double max_entry() const noexcept;
  /// Smallest off-diagonal entry; 0 for a one-point space.
  double min_nonzero() const noexcept;

  /// Relabels points: point i of the result is point perm[i] of *this.
  DistanceMatrix permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  DistanceMatrix(std::size_t size, std::vector<double> entries,
                 std::vector<std::string> labels)
      : size_(size), entries_(std::move(entries)), labels_(std::move(labels)) {}

  friend DistanceMatrix power_transform(const DistanceMatrix&, double);

  std::size_t size_ = 0;
  std::vector<double> entries_;
  std::vector<std::string> labels_;
};

enum class ViolationKind {
  Triangle,        // d(i,j) > d(i,k) + d(k,j)
  StrongTriangle,  // d(i,j) > max(d(i,k), d(k,j)) but the triangle holds
};

struct Violation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  ViolationKind kind = ViolationKind::Triangle;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool is_metric = true;
  bool is_ultrametric = true;
  std::vector<Violation> violations;
  double tolerance_used = 0.0;
};

/// Triangle inequality over all triples; violations lists Triangle witnesses
/// with i < j. is_ultrametric is filled in as well but not witnessed.
ValidationReport validate_metric(const DistanceMatrix& d);

/// Strong triangle inequality over all triples; every failing triple is
/// listed, tagged Triangle when it also breaks the ordinary inequality.
ValidationReport validate_ultrametric(const DistanceMatrix& d);

/// The distinct nonzero distances alpha_1 < ... < alpha_l of a space.
struct DistanceSpectrum {
  std::vector<double> alphas;
  std::vector<std::size_t> multiplicity;  // unordered pairs per alpha
  double merge_tolerance = 0.0;

  std::size_t ell() const noexcept { return alphas.size(); }

  /// Index k with |alphas[k] - value| <= merge_tolerance, if any.
  std::optional<std::size_t> index_of(double value) const;
};

DistanceSpectrum distinct_distances(const DistanceMatrix& d);

/// Entrywise d^p, with 0^0 = 0 so that p = 0 yields the discrete metric.
DistanceMatrix power_transform(const DistanceMatrix& d, double p);

/// Random ultrametric from a recursive random partition. Each internal node
/// of the hierarchy takes a level strictly above those of its children; the
/// root takes the top level. Deterministic in seed.
DistanceMatrix generate_random_ultrametric(std::size_t n_points,
                                           std::span<const double> levels,
                                           std::uint64_t seed);

// ---------------------------------------------------------------------------
// I/O

enum class MatrixFormat { Csv, Json };

/// Format implied by a file extension (.csv, .json).
std::optional<MatrixFormat> format_from_path(const std::filesystem::path& path);

DistanceMatrix load_distance_matrix(std::istream& in, MatrixFormat format);
DistanceMatrix load_distance_matrix(const std::filesystem::path& path,
                                    std::optional<MatrixFormat> format = {});

/// JSON output uses the shortest round-trip float representation, so
/// load(save(d)) == d bit for bit.
void save_distance_matrix(std::ostream& out, const DistanceMatrix& d,
                          MatrixFormat format);

}  // namespace ultragram
