#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "mobility/estimation.hpp"

namespace mobility {

enum class IncomeScale { raw_money, already_log };

/// A header name or a 0-based column index.
using ColumnRef = std::variant<std::string, std::size_t>;

struct DatasetSpec {
  std::filesystem::path path;
  ColumnRef parent_column = std::string("parent");
  ColumnRef child_column = std::string("child");
  bool has_header = true;
  IncomeScale income_scale = IncomeScale::raw_money;
};

using Sample = std::variant<IncomeSample, LogIncomeSample>;

/// Comma-separated, UTF-8, '.' decimal separator. Fields may be wrapped in
/// double quotes ("" escapes a quote); surrounding spaces are ignored; blank
/// lines are skipped; CRLF line endings are accepted.
///
/// Errors carry the 1-based line number: ParseError (non-numeric cell, ragged
/// row), MissingColumn, NonPositiveIncome (raw_money only). Selecting the
/// same column twice is an InvalidArgument.
Sample parse_csv(std::string_view text, const DatasetSpec& spec);

/// Reads spec.path and parses it. IoError if the file cannot be read.
Sample load_csv(const DatasetSpec& spec);

/// "parent,child" header followed by one row per pair, 17 significant digits.
/// With raw_money the log-incomes are exponentiated before writing.
std::string write_sample_csv(const LogIncomeSample& sample, IncomeScale scale);

/// Log view of either sample kind.
LogIncomeSample as_log_sample(const Sample& sample);

}  // namespace mobility
