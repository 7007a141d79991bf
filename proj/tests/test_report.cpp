#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "support/fixtures.hpp"
#include "ultragram/error.hpp"
#include "ultragram/report.hpp"

using namespace ultragram;
using namespace ultragram::testing;

namespace {

std::string json_of(const AnalysisReport& r) {
  std::ostringstream os;
  write_report(os, r, ReportFormat::Json);
  return os.str();
}

}  // namespace

TEST_SUITE("cli_reports") {

TEST_CASE("analyze the 7-point fixture") {
  const auto r = analyze(example7(), {.p = 1});
  REQUIRE(r.lambda_min_closed_form.has_value());
  CHECK(*r.lambda_min_closed_form == 0.5);
  CHECK(std::abs(r.lambda_min_numeric - 0.5) <= 1e-10);
  CHECK(r.eigenspace_dimension == 3);
  CHECK(r.eigenspace_dimension_numeric == 3);
  CHECK(r.eigenspace_source == "coteries");
  CHECK_FALSE(r.degenerate);
  CHECK_FALSE(r.permutation_applied.has_value());
  REQUIRE(r.coteries.has_value());
  CHECK(*r.coteries == std::vector<std::vector<std::string>>{{"x1", "x2"}, {"x3", "x4"}, {"x5", "x6"}});
  CHECK(r.alphas == std::vector<double>{1, 2, 3, 4});
  CHECK_FALSE(r.gap_S_estimate.has_value());
  CHECK_FALSE(r.timings.has_value());

  const std::string j = json_of(r);
  CHECK(j.find("\"lambda_min_closed_form\": 0.5,") != std::string::npos);
  CHECK(j.find("\"schema\": \"1\"") != std::string::npos);
  CHECK(j.find("\"gap_S_estimate\": null") != std::string::npos);
  CHECK(j.find("\"embedding\": null") != std::string::npos);
}

TEST_CASE("key order is fixed") {
  const auto doc = to_json(analyze(example7(), {.p = 2}));
  const std::vector<std::string> keys{
      "schema", "input_digest", "p", "labels", "alphas", "coteries", "degenerate",
      "permutation_applied", "lambda_min_closed_form", "lambda_min_numeric",
      "eigenspace_dimension", "eigenspace_dimension_numeric", "eigenspace_source",
      "eigenspace_basis", "gap_S_estimate", "gap_classic_estimate", "supremal_type",
      "supremal_type_is_lower_bound", "embedding", "timings"};
  std::vector<std::string> got;
  for (const auto& [k, v] : doc.items()) got.push_back(k);
  CHECK(got == keys);
}

TEST_CASE("closed form present iff nondegenerate ultrametric and p > 0") {
  CHECK(analyze(example7(), {.p = 0.5}).lambda_min_closed_form.has_value());
  CHECK_FALSE(analyze(example7(), {.p = 0}).lambda_min_closed_form.has_value());
  CHECK_FALSE(analyze(triangle(1, 1.5, 2), {.p = 1}).lambda_min_closed_form.has_value());
  CHECK_FALSE(analyze(triangle(1, 1.5, 2), {.p = 1}).coteries.has_value());
  CHECK_THROWS_AS(analyze(triangle(1, 2, 4), {.p = 1}), Error);
}

TEST_CASE("degenerate input is reordered and reported") {
  const auto r = analyze(degenerate3(), {.p = 1});
  CHECK(r.degenerate);
  REQUIRE(r.permutation_applied.has_value());
  CHECK(*r.permutation_applied == std::vector<std::size_t>{2, 1, 0});
  CHECK(r.labels == std::vector<std::string>{"x2", "x1", "x0"});
  CHECK(*r.lambda_min_closed_form == 0.5);
  CHECK(std::abs(r.lambda_min_numeric - 0.5) <= 1e-10);
}

TEST_CASE("closed form and numeric agree on random ultrametrics") {
  std::mt19937_64 rng(161);
  for (int k = 0; k < 40; ++k) {
    const auto d = random_nondegenerate(rng);
    const auto r = analyze(d, {.p = 1.0 + k % 3});
    CHECK(std::abs(*r.lambda_min_closed_form - r.lambda_min_numeric) <=
          1e-9 * *r.lambda_min_closed_form);
  }
}

TEST_CASE("JSON round trip is lossless") {
  std::mt19937_64 rng(171);
  std::vector<AnalysisReport> reports;
  reports.push_back(analyze(example7(), {.p = 1, .with_gap = true, .samples = 200,
                                         .with_embedding = true, .with_supremal = true}));
  reports.push_back(analyze(degenerate3(), {.p = 0.7}));
  reports.push_back(analyze(collinear112(), {.p = 1, .with_supremal = true}));
  reports.push_back(analyze(random_euclidean(rng, 5, 2), {.p = 1.3, .with_embedding = true}));
  reports.push_back(analyze(example7(), {.p = 1, .record_timings = true}));
  for (const auto& r : reports) {
    const std::string first = json_of(r);
    std::istringstream in(first);
    const auto back = read_report(in);
    CHECK(back == r);
    CHECK(json_of(back) == first);
  }
}

TEST_CASE("malformed reports are rejected") {
  std::istringstream garbage("{not json");
  CHECK_THROWS_AS(read_report(garbage), Error);
  std::istringstream wrong_schema(R"({"schema": "2"})");
  CHECK_THROWS_AS(read_report(wrong_schema), Error);
}

TEST_CASE("text report") {
  std::ostringstream os;
  write_report(os, analyze(example7(), {.p = 1}), ReportFormat::Text);
  const std::string t = os.str();
  CHECK(t.find("{x1, x2} {x3, x4} {x5, x6}") != std::string::npos);
  CHECK(t.find("0.5") != std::string::npos);
  CHECK(t.find("eigenspace dimension") != std::string::npos);
}

TEST_CASE("input digest depends on content only") {
  CHECK(input_digest(example7()) == input_digest(example7()));
  CHECK(input_digest(example7()) != input_digest(degenerate3()));
  CHECK(input_digest(example7()).rfind("fnv1a64:", 0) == 0);
}

}  // TEST_SUITE
