#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ultragram/error.hpp"
#include "ultragram/metric.hpp"

namespace ultragram {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty()) return std::nullopt;
  return value;
}

DistanceMatrix load_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto tokens = split_commas(line);
    std::vector<double> row;
    row.reserve(tokens.size());
    bool numeric = true;
    for (auto tok : tokens) {
      auto v = parse_double(tok);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (rows.empty() && labels.empty()) {
        for (auto tok : tokens) labels.emplace_back(tok);
        continue;
      }
      throw Error(ErrorKind::InvalidInput,
                  "CSV line " + std::to_string(line_no) +
                      ": non-numeric entry");
    }
    rows.push_back(std::move(row));
  }
  return DistanceMatrix::from_rows(rows, std::move(labels));
}

DistanceMatrix load_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix") || !doc["matrix"].is_array())
    throw Error(ErrorKind::InvalidInput,
                "JSON: expected an object with a \"matrix\" array");
  std::vector<std::vector<double>> rows;
  for (const auto& row : doc["matrix"]) {
    if (!row.is_array())
      throw Error(ErrorKind::InvalidInput, "JSON: matrix rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number())
        throw Error(ErrorKind::InvalidInput, "JSON: non-numeric entry");
      r.push_back(v.get<double>());
    }
    rows.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (doc.contains("labels") && !doc["labels"].is_null()) {
    if (!doc["labels"].is_array())
      throw Error(ErrorKind::InvalidInput, "JSON: labels must be an array");
    for (const auto& l : doc["labels"]) {
      if (!l.is_string())
        throw Error(ErrorKind::InvalidInput, "JSON: labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return DistanceMatrix::from_rows(rows, std::move(labels));
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::optional<MatrixFormat> format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv" || ext == ".CSV") return MatrixFormat::Csv;
  if (ext == ".json" || ext == ".JSON") return MatrixFormat::Json;
  return std::nullopt;
}

DistanceMatrix load_distance_matrix(std::istream& in, MatrixFormat format) {
  return format == MatrixFormat::Csv ? load_csv(in) : load_json(in);
}

DistanceMatrix load_distance_matrix(const std::filesystem::path& path,
                                    std::optional<MatrixFormat> format) {
  if (!format) format = format_from_path(path);
  if (!format)
    throw Error(ErrorKind::InvalidInput,
                "cannot infer format of " + path.string());
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::InvalidInput, "cannot open " + path.string());
  return load_distance_matrix(in, *format);
}

void save_distance_matrix(std::ostream& out, const DistanceMatrix& d,
                          MatrixFormat format) {
  if (format == MatrixFormat::Json) {
    nlohmann::ordered_json doc;
    doc["labels"] = d.labels();
    doc["matrix"] = d.rows();
    out << doc.dump() << '\n';
    return;
  }
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i)
    out << (i ? "," : "") << d.labels()[i];
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      out << (j ? "," : "") << shortest(d(i, j));
    out << '\n';
  }
}

}  // namespace ultragram
