#include "ultragram/report.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ultragram/error.hpp"

namespace ultragram {

namespace {

using ojson = nlohmann::ordered_json;

template <typename T>
ojson nullable(const std::optional<T>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

template <typename T>
std::optional<T> read_nullable(const ojson& doc, const char* key) {
  const auto& v = doc.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

void write_vector(std::ostream& out, const std::vector<double>& v) {
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ")";
}

void write_text(std::ostream& out, const AnalysisReport& r) {
  std::ostringstream os;
  os << std::setprecision(6);
  auto row = [&os](const char* key) -> std::ostream& {
    return os << std::left << std::setw(40) << key;
  };
  auto maybe = [&os](const std::optional<double>& v) {
    if (v)
      os << *v;
    else
      os << "n/a";
  };

  row("input digest") << r.input_digest << '\n';
  row("exponent p") << r.p << '\n';
  row("labels");
  for (const auto& l : r.labels) os << l << ' ';
  os << '\n';
  row("distinct distances alpha_1..alpha_l");
  for (double a : r.alphas) os << a << ' ';
  os << '\n';
  row("coteries (balls of radius alpha_1)");
  if (r.coteries) {
    for (const auto& c : *r.coteries) {
      os << '{';
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
      os << "} ";
    }
  } else {
    os << "n/a (not an ultrametric)";
  }
  os << '\n';
  row("degenerate labelling") << (r.degenerate ? "yes" : "no") << '\n';
  row("permutation applied");
  if (r.permutation_applied) {
    for (std::size_t i : *r.permutation_applied) os << i << ' ';
  } else {
    os << "none";
  }
  os << '\n';
  row("lambda_min, closed form alpha_1^p/2");
  maybe(r.lambda_min_closed_form);
  os << '\n';
  row("lambda_min, numeric (Jacobi)") << r.lambda_min_numeric << '\n';
  row("eigenspace dimension") << r.eigenspace_dimension << " (from "
                              << r.eigenspace_source << "; numeric cluster "
                              << r.eigenspace_dimension_numeric << ")\n";
  os << "eigenspace basis\n";
  for (const auto& v : r.eigenspace_basis) {
    os << "  ";
    write_vector(os, v);
    os << '\n';
  }
  row("gap Gamma_S(p) estimate");
  maybe(r.gap_S_estimate);
  os << '\n';
  row("classical gap Gamma_X(p) estimate");
  maybe(r.gap_classic_estimate);
  os << '\n';
  row("supremal negative type");
  if (!r.supremal_type)
    os << "n/a";
  else if (r.supremal_type->infinite)
    os << "infinite";
  else
    os << (r.supremal_type->at_least ? ">= " : "") << r.supremal_type->value;
  os << '\n';
  if (r.embedding) {
    os << "embedding of (X, d^{p/2})\n";
    for (std::size_t i = 0; i < r.embedding->size(); ++i) {
      os << "  " << (i < r.labels.size() ? r.labels[i] : std::to_string(i))
         << ' ';
      write_vector(os, (*r.embedding)[i]);
      os << '\n';
    }
  }
  if (r.timings) {
    os << "timings (ms)\n";
    for (const auto& [stage, ms] : *r.timings)
      os << "  " << std::left << std::setw(14) << stage << ms << '\n';
  }
  out << os.str();
}

}  // namespace

std::string input_digest(const DistanceMatrix& d) {
  std::ostringstream os;
  save_distance_matrix(os, d, MatrixFormat::Json);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::ordered_json to_json(const AnalysisReport& r) {
  ojson doc;
  doc["schema"] = kReportSchema;
  doc["input_digest"] = r.input_digest;
  doc["p"] = r.p;
  doc["labels"] = r.labels;
  doc["alphas"] = r.alphas;
  doc["coteries"] = nullable(r.coteries);
  doc["degenerate"] = r.degenerate;
  doc["permutation_applied"] = nullable(r.permutation_applied);
  doc["lambda_min_closed_form"] = nullable(r.lambda_min_closed_form);
  doc["lambda_min_numeric"] = r.lambda_min_numeric;
  doc["eigenspace_dimension"] = r.eigenspace_dimension;
  doc["eigenspace_dimension_numeric"] = r.eigenspace_dimension_numeric;
  doc["eigenspace_source"] = r.eigenspace_source;
  doc["eigenspace_basis"] = r.eigenspace_basis;
  doc["gap_S_estimate"] = nullable(r.gap_S_estimate);
  doc["gap_classic_estimate"] = nullable(r.gap_classic_estimate);
  if (!r.supremal_type) {
    doc["supremal_type"] = nullptr;
    doc["supremal_type_is_lower_bound"] = nullptr;
  } else {
    if (r.supremal_type->infinite)
      doc["supremal_type"] = "infinite";
    else
      doc["supremal_type"] = r.supremal_type->value;
    doc["supremal_type_is_lower_bound"] = r.supremal_type->at_least;
  }
  doc["embedding"] = nullable(r.embedding);
  if (r.timings) {
    ojson t = ojson::object();
    for (const auto& [stage, ms] : *r.timings) t[stage] = ms;
    doc["timings"] = std::move(t);
  } else {
    doc["timings"] = nullptr;
  }
  return doc;
}

AnalysisReport report_from_json(const nlohmann::ordered_json& doc) {
  try {
    if (doc.at("schema") != kReportSchema)
      throw Error(ErrorKind::InvalidInput, "unsupported report schema");
    AnalysisReport r;
    r.input_digest = doc.at("input_digest").get<std::string>();
    r.p = doc.at("p").get<double>();
    r.labels = doc.at("labels").get<std::vector<std::string>>();
    r.alphas = doc.at("alphas").get<std::vector<double>>();
    r.coteries =
        read_nullable<std::vector<std::vector<std::string>>>(doc, "coteries");
    r.degenerate = doc.at("degenerate").get<bool>();
    r.permutation_applied =
        read_nullable<std::vector<std::size_t>>(doc, "permutation_applied");
    r.lambda_min_closed_form = read_nullable<double>(doc, "lambda_min_closed_form");
    r.lambda_min_numeric = doc.at("lambda_min_numeric").get<double>();
    r.eigenspace_dimension = doc.at("eigenspace_dimension").get<std::size_t>();
    r.eigenspace_dimension_numeric =
        doc.at("eigenspace_dimension_numeric").get<std::size_t>();
    r.eigenspace_source = doc.at("eigenspace_source").get<std::string>();
    r.eigenspace_basis =
        doc.at("eigenspace_basis").get<std::vector<std::vector<double>>>();
    r.gap_S_estimate = read_nullable<double>(doc, "gap_S_estimate");
    r.gap_classic_estimate = read_nullable<double>(doc, "gap_classic_estimate");
    const auto& sup = doc.at("supremal_type");
    if (!sup.is_null()) {
      SupremalType s;
      if (sup.is_string()) {
        if (sup.get<std::string>() != "infinite")
          throw Error(ErrorKind::InvalidInput, "bad supremal_type value");
        s.infinite = true;
      } else {
        s.value = sup.get<double>();
      }
      s.at_least = doc.at("supremal_type_is_lower_bound").get<bool>();
      r.supremal_type = s;
    }
    r.embedding =
        read_nullable<std::vector<std::vector<double>>>(doc, "embedding");
    const auto& timings = doc.at("timings");
    if (!timings.is_null()) {
      std::vector<std::pair<std::string, double>> laps;
      for (const auto& [stage, ms] : timings.items())
        laps.emplace_back(stage, ms.get<double>());
      r.timings = std::move(laps);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("report: ") + e.what());
  }
}

void write_report(std::ostream& out, const AnalysisReport& report,
                  ReportFormat format) {
  if (format == ReportFormat::Text) {
    write_text(out, report);
    return;
  }
  out << to_json(report).dump(2) << '\n';
}

AnalysisReport read_report(std::istream& in) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("report: ") + e.what());
  }
  return report_from_json(doc);
}

}  // namespace ultragram
