#include <string>

#include "doctest.h"
#include "mobility/error.hpp"
#include "mobility/report.hpp"

using namespace mobility;

namespace {

ReportDocument sample_document() {
  ReportDocument doc;
  doc.params = ModelParams({.mu_p = 10.1, .sigma_p = 0.78, .mu_c = 10.25, .sigma_c = 1.15, .rho = 0.57});
  doc.fit = RegressionFit{1.8, 0.84, 100, 0.9};
  doc.measures.push_back(analytic_report(*doc.params));
  doc.measures.push_back(MobilityReport::make(0.83, 1.9, 0.55, Source::monte_carlo, 0.0497));
  doc.metadata.seed = 18446744073709551615ULL;
  doc.metadata.n = 100;
  doc.metadata.timestamp = "2026-01-01T00:00:00Z \"quoted\"";
  return doc;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("json carries source tags and exact values") {
    ReportDocument doc;
    doc.measures.push_back(MobilityReport::make(0.0, 0.0, 0.5, Source::analytic));
    const std::string json = write_report(doc, ReportFormat::json);
    CHECK(json.find("\"absolute_mobility\": 0.5") != std::string::npos);
    CHECK(json.find("\"source\": \"analytic\"") != std::string::npos);
    CHECK(json.find("\"schema_version\": 1") != std::string::npos);
    CHECK(json.find("\"params\": null") != std::string::npos);
  }

  TEST_CASE("figure-parameter measure values") {
    ReportDocument doc;
    doc.measures.push_back(analytic_report(
        ModelParams({.mu_p = 10.1, .sigma_p = 0.78, .mu_c = 10.25, .sigma_c = 1.15, .rho = 0.57})));
    const std::string json = write_report(doc, ReportFormat::json);
    CHECK(json.find("\"beta\": 0.840384") != std::string::npos);
    CHECK(json.find("\"absolute_mobility\": 0.56253") != std::string::npos);
  }

  TEST_CASE("deterministic bytes and lossless round-trip") {
    const ReportDocument doc = sample_document();
    const std::string a = write_report(doc, ReportFormat::json);
    CHECK(a == write_report(doc, ReportFormat::json));
    CHECK(write_report(doc, ReportFormat::csv) == write_report(doc, ReportFormat::csv));

    const ReportDocument back = read_report_json(a);
    CHECK(back.params == doc.params);
    CHECK(back.fit->alpha == doc.fit->alpha);
    CHECK(back.fit->n == doc.fit->n);
    REQUIRE(back.measures.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(back.measures[i].beta == doc.measures[i].beta);
      CHECK(back.measures[i].alpha == doc.measures[i].alpha);
      CHECK(back.measures[i].relative_mobility == doc.measures[i].relative_mobility);
      CHECK(back.measures[i].absolute_mobility == doc.measures[i].absolute_mobility);
      CHECK(back.measures[i].source == doc.measures[i].source);
      CHECK(back.measures[i].absolute_mobility_std_error ==
            doc.measures[i].absolute_mobility_std_error);
    }
    CHECK(back.metadata.seed == doc.metadata.seed);
    CHECK(back.metadata.timestamp == doc.metadata.timestamp);
    CHECK(write_report(back, ReportFormat::json) == a);
  }

  TEST_CASE("csv layout") {
    const std::string csv = write_report(sample_document(), ReportFormat::csv);
    CHECK(csv.starts_with("section,source,key,value\nmetadata,,schema_version,1\n"));
    CHECK(csv.find("measure,monte_carlo,absolute_mobility_std_error,0.049700000000000001\n") !=
          std::string::npos);
    CHECK(csv.find("params,,rho,0.56999999999999995\n") != std::string::npos);
    CHECK(csv.find("metadata,,timestamp,\"2026-01-01T00:00:00Z \"\"quoted\"\"\"\n") !=
          std::string::npos);
  }

  TEST_CASE("malformed reports are rejected") {
    CHECK_THROWS_AS(read_report_json("{"), ParseError);
    CHECK_THROWS_AS(read_report_json("{\"schema_version\": 2}"), ParseError);
    CHECK_THROWS_AS(read_report_json("{\"schema_version\": 1}"), ParseError);
  }
}
