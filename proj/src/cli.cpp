#include "ultragram/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ultragram/error.hpp"
#include "ultragram/gramian.hpp"
#include "ultragram/metric.hpp"
#include "ultragram/negtype.hpp"
#include "ultragram/report.hpp"
#include "ultragram/ultrametric.hpp"

namespace ultragram {

namespace {

using ojson = nlohmann::ordered_json;

struct InputOptions {
  std::string path = "-";
  std::string format;  // empty: infer
};

DistanceMatrix load_input(const InputOptions& opts, std::istream& in) {
  std::optional<MatrixFormat> format;
  if (opts.format == "csv") format = MatrixFormat::Csv;
  if (opts.format == "json") format = MatrixFormat::Json;
  if (opts.path != "-") return load_distance_matrix(opts.path, format);

  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  if (!format) {
    const auto first = text.find_first_not_of(" \t\r\n");
    format = (first != std::string::npos && text[first] == '{')
                 ? MatrixFormat::Json
                 : MatrixFormat::Csv;
  }
  std::istringstream is(text);
  return load_distance_matrix(is, *format);
}

ojson header(const char* command) {
  ojson doc;
  doc["schema"] = kReportSchema;
  doc["command"] = command;
  return doc;
}

void emit(std::ostream& out, const ojson& doc) { out << doc.dump(2) << '\n'; }

// Key/value text rendering of a flat-ish JSON document.
void emit_text(std::ostream& out, const ojson& doc) {
  std::ostringstream os;
  os << std::setprecision(6);
  std::function<void(const ojson&)> value = [&](const ojson& v) {
    if (v.is_number_float()) {
      os << v.get<double>();
    } else if (v.is_string()) {
      os << v.get<std::string>();
    } else if (v.is_array()) {
      os << '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        value(v[i]);
      }
      os << ']';
    } else if (v.is_object()) {
      os << '{';
      bool first = true;
      for (const auto& [k, x] : v.items()) {
        os << (first ? "" : ", ") << k << ": ";
        value(x);
        first = false;
      }
      os << '}';
    } else {
      os << v.dump();
    }
  };
  for (const auto& [key, v] : doc.items()) {
    if (key == "schema") continue;
    os << std::left << std::setw(28) << key;
    value(v);
    os << '\n';
  }
  out << os.str();
}

std::string describe(const DistanceMatrix& d, const Violation& v) {
  std::ostringstream os;
  os.precision(17);
  const auto& l = d.labels();
  os << (v.kind == ViolationKind::Triangle ? "triangle" : "strong triangle")
     << " inequality fails: d(" << l[v.i] << "," << l[v.j]
     << ")=" << d(v.i, v.j) << ", d(" << l[v.i] << "," << l[v.k]
     << ")=" << d(v.i, v.k) << ", d(" << l[v.k] << "," << l[v.j]
     << ")=" << d(v.k, v.j);
  return os.str();
}

ojson labelled_sets(const DistanceMatrix& d,
                    const std::vector<std::vector<std::size_t>>& sets) {
  ojson out = ojson::array();
  for (const auto& set : sets) {
    ojson names = ojson::array();
    for (std::size_t i : set) names.push_back(d.labels()[i]);
    out.push_back(std::move(names));
  }
  return out;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidArgument:
      return kExitMalformedInput;
    case ErrorKind::NotUltrametric:
      return kExitNotUltrametric;
    case ErrorKind::Numeric:
      return kExitNumeric;
  }
  return kExitUsage;
}

class Cli {
 public:
  Cli(std::istream& in, std::ostream& out, std::ostream& err)
      : in_(in), out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Spectral analysis of p-Gramians of finite metric spaces",
                 "ultragram"};
    app.require_subcommand(1);

    auto add_input = [this](CLI::App* sub) {
      sub->add_option("-i,--input", input_.path,
                      "distance matrix file (.csv or .json); - for stdin")
          ->capture_default_str();
      sub->add_option("--input-format", input_.format, "csv or json")
          ->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_format = [this](CLI::App* sub) {
      sub->add_option("--format", format_, "report format: json or text")
          ->check(CLI::IsMember({"json", "text"}))
          ->capture_default_str();
    };
    auto add_p = [this](CLI::App* sub) {
      sub->add_option("-p,--p", opts_.p, "exponent p >= 0")
          ->check(CLI::NonNegativeNumber)
          ->capture_default_str();
    };
    auto add_sampling = [this](CLI::App* sub) {
      sub->add_option("--samples", opts_.samples, "random starts")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
      sub->add_option("--seed", opts_.seed, "random seed")->capture_default_str();
    };
    auto add_supremal = [this](CLI::App* sub) {
      sub->add_option("--pmax", opts_.p_max, "upper end of the search")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
      sub->add_option("--tol", opts_.supremal_tol, "bisection tolerance")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
    };

    auto* validate = app.add_subcommand("validate", "metric and ultrametric checks");
    add_input(validate);
    add_format(validate);

    auto* coteries = app.add_subcommand("coteries", "coterie decomposition");
    add_input(coteries);
    add_format(coteries);

    auto* analyze_cmd = app.add_subcommand(
        "analyze", "closed-form and numeric minimum eigenvalue and eigenspace");
    add_input(analyze_cmd);
    add_format(analyze_cmd);
    add_p(analyze_cmd);
    add_sampling(analyze_cmd);
    add_supremal(analyze_cmd);
    analyze_cmd->add_flag("--with-gap", opts_.with_gap, "estimate both gaps");
    analyze_cmd->add_flag("--with-embedding", opts_.with_embedding,
                          "include Hilbert-space coordinates");
    analyze_cmd->add_flag("--with-supremal", opts_.with_supremal,
                          "estimate the supremal negative type");
    analyze_cmd->add_flag("--timings", opts_.record_timings,
                          "record per-stage wall-clock times");

    auto* gap = app.add_subcommand("gap", "negative type gap estimate");
    add_input(gap);
    add_format(gap);
    add_p(gap);
    add_sampling(gap);
    gap->add_option("--mode", gap_mode_, "s (Gramian slice) or classic (l1)")
        ->check(CLI::IsMember({"s", "classic"}))
        ->capture_default_str();

    auto* embed = app.add_subcommand("embed", "isometric embedding of (X, d^{p/2})");
    add_input(embed);
    add_format(embed);
    add_p(embed);

    auto* supremal = app.add_subcommand("supremal", "supremal negative type");
    add_input(supremal);
    add_format(supremal);
    add_supremal(supremal);

    auto* generate = app.add_subcommand("generate", "random ultrametric");
    generate->add_option("--points", gen_points_, "number of points (>= 3)")
        ->required();
    generate->add_option("--levels", gen_levels_,
                         "strictly increasing positive levels, comma separated")
        ->delimiter(',')
        ->required();
    generate->add_option("--seed", opts_.seed, "random seed")->capture_default_str();
    generate->add_option("--format", gen_format_, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    auto* spectrum = app.add_subcommand("spectrum", "eigendecomposition of G_p");
    add_input(spectrum);
    add_format(spectrum);
    add_p(spectrum);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kExitOk : kExitUsage;
    }

    try {
      if (validate->parsed()) return cmd_validate();
      if (coteries->parsed()) return cmd_coteries();
      if (analyze_cmd->parsed()) return cmd_analyze();
      if (gap->parsed()) return cmd_gap();
      if (embed->parsed()) return cmd_embed();
      if (supremal->parsed()) return cmd_supremal();
      if (generate->parsed()) return cmd_generate();
      if (spectrum->parsed()) return cmd_spectrum();
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return exit_code(e.kind());
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    return kExitUsage;
  }

 private:
  void emit_doc(const ojson& doc) {
    if (format_ == "text")
      emit_text(out_, doc);
    else
      emit(out_, doc);
  }

  // Loads the input and rejects anything that is not a metric.
  DistanceMatrix load_metric(ValidationReport* report_out = nullptr) {
    DistanceMatrix d = load_input(input_, in_);
    ValidationReport report = validate_ultrametric(d);
    if (!report.is_metric) {
      const auto it = std::find_if(
          report.violations.begin(), report.violations.end(),
          [](const Violation& v) { return v.kind == ViolationKind::Triangle; });
      throw Error(ErrorKind::InvalidInput, "not a metric: " + describe(d, *it));
    }
    if (report_out) *report_out = std::move(report);
    return d;
  }

  int cmd_validate() {
    const DistanceMatrix d = load_input(input_, in_);
    const ValidationReport metric = validate_metric(d);
    const ValidationReport ultra = validate_ultrametric(d);
    ojson doc = header("validate");
    doc["n_points"] = d.size();
    doc["labels"] = d.labels();
    doc["is_metric"] = metric.is_metric;
    doc["is_ultrametric"] = ultra.is_ultrametric;
    doc["tolerance"] = ultra.tolerance_used;
    ojson violations = ojson::array();
    for (const auto& v : ultra.violations) {
      ojson item;
      item["i"] = v.i;
      item["j"] = v.j;
      item["k"] = v.k;
      item["kind"] = v.kind == ViolationKind::Triangle ? "triangle"
                                                       : "strong_triangle";
      violations.push_back(std::move(item));
    }
    doc["violations"] = std::move(violations);
    emit_doc(doc);
    if (!metric.is_metric) {
      err_ << "error: not a metric: " << describe(d, metric.violations.front())
           << '\n';
      return kExitMalformedInput;
    }
    return kExitOk;
  }

  int cmd_coteries() {
    ValidationReport report;
    const DistanceMatrix d = load_metric(&report);
    if (!report.is_ultrametric) {
      err_ << "error: not an ultrametric: "
           << describe(d, report.violations.front()) << '\n';
      return kExitNotUltrametric;
    }
    const CoterieDecomposition c = find_coteries(d);
    ojson doc = header("coteries");
    doc["alpha1"] = c.alpha1;
    doc["r"] = c.r();
    doc["coteries"] = labelled_sets(d, c.coteries);
    doc["coterie_indices"] = c.coteries;
    doc["residual"] = labelled_sets(d, {c.residual}).front();
    doc["residual_indices"] = c.residual;
    doc["degenerate"] = d.size() >= 3 ? ojson(is_degenerate(d)) : ojson(nullptr);
    emit_doc(doc);
    return kExitOk;
  }

  int cmd_analyze() {
    const DistanceMatrix d = load_metric();
    const AnalysisReport report = analyze(d, opts_);
    write_report(out_, report,
                 format_ == "text" ? ReportFormat::Text : ReportFormat::Json);
    return kExitOk;
  }

  int cmd_gap() {
    const DistanceMatrix d = load_metric();
    ojson doc = header("gap");
    doc["mode"] = gap_mode_;
    doc["p"] = opts_.p;
    doc["samples"] = opts_.samples;
    doc["seed"] = opts_.seed;
    if (gap_mode_ == "s") {
      const GapEstimate g = estimate_gap_S(d, opts_.p, opts_.samples, opts_.seed);
      doc["estimate"] = g.estimate;
      doc["argmin"]["s"] = std::vector<double>(g.argmin.weights().s().begin(),
                                               g.argmin.weights().s().end());
      doc["argmin"]["t"] = std::vector<double>(g.argmin.weights().t().begin(),
                                               g.argmin.weights().t().end());
    } else {
      doc["estimate"] =
          estimate_gap_classic(d, opts_.p, opts_.samples, opts_.seed);
    }
    emit_doc(doc);
    return kExitOk;
  }

  int cmd_embed() {
    const DistanceMatrix d = load_metric();
    ojson doc = header("embed");
    doc["p"] = opts_.p;
    doc["labels"] = d.labels();
    doc["coordinates"] = hilbert_embedding(d, opts_.p);
    emit_doc(doc);
    return kExitOk;
  }

  int cmd_supremal() {
    const DistanceMatrix d = load_metric();
    const SupremalType s =
        estimate_supremal_negtype(d, opts_.p_max, opts_.supremal_tol);
    ojson doc = header("supremal");
    doc["supremal_type"] = s.infinite ? ojson("infinite") : ojson(s.value);
    doc["is_lower_bound"] = s.at_least;
    doc["p_max"] = opts_.p_max;
    doc["tol"] = opts_.supremal_tol;
    emit_doc(doc);
    return kExitOk;
  }

  int cmd_generate() {
    const DistanceMatrix d =
        generate_random_ultrametric(gen_points_, gen_levels_, opts_.seed);
    save_distance_matrix(out_, d,
                         gen_format_ == "csv" ? MatrixFormat::Csv
                                              : MatrixFormat::Json);
    return kExitOk;
  }

  int cmd_spectrum() {
    const DistanceMatrix d = load_metric();
    const SymMatrix g = build_gramian(d, opts_.p);
    const Spectrum s = sym_eigen(g);
    ojson doc = header("spectrum");
    doc["p"] = opts_.p;
    doc["dimension"] = g.dim();
    doc["eigenvalues"] = s.eigenvalues;
    doc["eigenvectors"] = s.eigenvectors;
    doc["residual_bound"] = s.residual_bound;
    doc["sweeps"] = s.sweeps;
    emit_doc(doc);
    return kExitOk;
  }

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;

  InputOptions input_;
  std::string format_ = "json";
  AnalysisOptions opts_;
  std::string gap_mode_ = "s";
  std::size_t gen_points_ = 0;
  std::vector<double> gen_levels_;
  std::string gen_format_ = "json";
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  return Cli(in, out, err).run(args);
}

}  // namespace ultragram
