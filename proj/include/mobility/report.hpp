#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobility/estimation.hpp"
#include "mobility/model.hpp"

namespace mobility {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

struct ReportMetadata {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::string tool_version{kToolVersion};
  // Never taken from the clock: reports are byte-deterministic, so the caller
  // decides whether to stamp one.
  std::optional<std::string> timestamp;
};

struct ReportDocument {
  std::optional<ModelParams> params;
  std::optional<RegressionFit> fit;
  std::vector<MobilityReport> measures;
  ReportMetadata metadata;
};

enum class ReportFormat { json, csv };

/// Deterministic serialisation; layout documented in docs/report_schema.md.
/// Numbers use 17 significant digits, keys appear in a fixed order.
std::string write_report(const ReportDocument& doc, ReportFormat format);

/// Parses the JSON form back. Throws ParseError on schema violations.
ReportDocument read_report_json(std::string_view json);

}  // namespace mobility
