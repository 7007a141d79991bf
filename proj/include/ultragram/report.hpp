#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ultragram/metric.hpp"
#include "ultragram/negtype.hpp"

namespace ultragram {

inline constexpr const char* kReportSchema = "1";

struct AnalysisOptions {
  double p = 1.0;
  bool with_gap = false;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  bool with_embedding = false;
  bool with_supremal = false;
  double p_max = 20.0;
  double supremal_tol = 1e-6;
  bool record_timings = false;
};

/// Result of the analyze pipeline. Optional fields serialize as null.
struct AnalysisReport {
  std::string input_digest;
  double p = 1.0;
  std::vector<std::string> labels;  // labelling the results refer to
  std::vector<double> alphas;
  std::optional<std::vector<std::vector<std::string>>> coteries;
  bool degenerate = false;
  std::optional<std::vector<std::size_t>> permutation_applied;
  std::optional<double> lambda_min_closed_form;
  double lambda_min_numeric = 0.0;
  std::size_t eigenspace_dimension = 0;
  std::size_t eigenspace_dimension_numeric = 0;
  std::string eigenspace_source;  // "coteries" or "numeric"
  std::vector<std::vector<double>> eigenspace_basis;
  std::optional<double> gap_S_estimate;
  std::optional<double> gap_classic_estimate;
  std::optional<SupremalType> supremal_type;
  std::optional<std::vector<std::vector<double>>> embedding;
  std::optional<std::vector<std::pair<std::string, double>>> timings;  // ms

  friend bool operator==(const AnalysisReport&,
                         const AnalysisReport&) = default;
};

enum class ReportFormat { Json, Text };

/// Content hash of a distance matrix (FNV-1a over its JSON serialization).
std::string input_digest(const DistanceMatrix& d);

/// Validate, reorder if degenerate, build G_p, compare the closed form with
/// the numeric spectrum and describe the minimum eigenspace. Throws
/// ErrorKind::InvalidInput when d is not a metric.
AnalysisReport analyze(const DistanceMatrix& d, const AnalysisOptions& options);

nlohmann::ordered_json to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::ordered_json& doc);

void write_report(std::ostream& out, const AnalysisReport& report,
                  ReportFormat format);
AnalysisReport read_report(std::istream& in);

}  // namespace ultragram
