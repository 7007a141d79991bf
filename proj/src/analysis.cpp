#include <chrono>
#include <sstream>

#include "ultragram/error.hpp"
#include "ultragram/gramian.hpp"
#include "ultragram/report.hpp"
#include "ultragram/ultrametric.hpp"

namespace ultragram {

namespace {

class StageClock {
 public:
  explicit StageClock(bool enabled) : enabled_(enabled), last_(now()) {}

  void lap(const char* stage) {
    if (!enabled_) return;
    const auto t = now();
    laps_.emplace_back(
        stage, std::chrono::duration<double, std::milli>(t - last_).count());
    last_ = t;
  }

  std::optional<std::vector<std::pair<std::string, double>>> take() {
    if (!enabled_) return std::nullopt;
    return std::move(laps_);
  }

 private:
  static std::chrono::steady_clock::time_point now() {
    return std::chrono::steady_clock::now();
  }

  bool enabled_;
  std::chrono::steady_clock::time_point last_;
  std::vector<std::pair<std::string, double>> laps_;
};

}  // namespace

AnalysisReport analyze(const DistanceMatrix& input,
                       const AnalysisOptions& options) {
  if (!(options.p >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "analyze requires p >= 0");
  if (input.size() < 2)
    throw Error(ErrorKind::InvalidInput, "analyze needs at least 2 points");

  StageClock clock(options.record_timings);
  AnalysisReport r;
  r.input_digest = input_digest(input);
  r.p = options.p;

  const ValidationReport validation = validate_ultrametric(input);
  if (!validation.is_metric) {
    const Violation& v = validation.violations.front();
    std::ostringstream os;
    os << "not a metric: triangle inequality fails for (" << v.i << "," << v.j
       << "," << v.k << ")";
    throw Error(ErrorKind::InvalidInput, os.str());
  }
  const bool ultra = validation.is_ultrametric;
  const bool structured = ultra && input.size() >= 3;
  clock.lap("validate");

  DistanceMatrix d = input;
  if (structured) {
    Reordering reordering = reorder_nondegenerate(input);
    r.degenerate = is_degenerate(input);
    if (r.degenerate) {
      r.permutation_applied = reordering.permutation;
      d = std::move(reordering.matrix);
    }
  }
  r.labels = d.labels();
  r.alphas = distinct_distances(d).alphas;
  if (ultra) {
    const CoterieDecomposition c = find_coteries(d);
    std::vector<std::vector<std::string>> named;
    for (const auto& coterie : c.coteries) {
      std::vector<std::string> names;
      for (std::size_t i : coterie) names.push_back(d.labels()[i]);
      named.push_back(std::move(names));
    }
    r.coteries = std::move(named);
  }
  clock.lap("structure");

  const SymMatrix g = build_gramian(d, options.p);
  MinEigenpair numeric = min_eigenpair(g);
  r.lambda_min_numeric = numeric.lambda_min;
  r.eigenspace_dimension_numeric = numeric.eigenspace.size();
  clock.lap("spectrum");

  if (structured && options.p > 0.0) {
    r.lambda_min_closed_form = closed_form_min_eigenvalue(d, options.p);
    EigenspaceDescription e = eigenspace_basis(d, options.p);
    r.eigenspace_dimension = e.dimension;
    r.eigenspace_basis = std::move(e.basis);
    r.eigenspace_source = "coteries";
  } else {
    r.eigenspace_dimension = numeric.eigenspace.size();
    r.eigenspace_basis = std::move(numeric.eigenspace);
    r.eigenspace_source = "numeric";
  }
  clock.lap("closed_form");

  if (options.with_gap) {
    r.gap_S_estimate =
        estimate_gap_S(d, options.p, options.samples, options.seed).estimate;
    r.gap_classic_estimate =
        estimate_gap_classic(d, options.p, options.samples, options.seed);
    clock.lap("gap");
  }
  if (options.with_embedding) {
    r.embedding = hilbert_embedding(d, options.p);
    clock.lap("embedding");
  }
  if (options.with_supremal) {
    r.supremal_type =
        estimate_supremal_negtype(d, options.p_max, options.supremal_tol);
    clock.lap("supremal");
  }
  r.timings = clock.take();
  return r;
}

}  // namespace ultragram
