#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace mobility {

/// Coarse classification used to map failures onto CLI exit codes.
enum class ErrorCategory {
  usage,    // caller supplied invalid arguments or parameters
  data,     // input data is malformed or unsuitable for estimation
  numeric,  // the requested quantity is undefined for valid inputs
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// Model parameters outside their admissible region.
class InvalidParams : public Error {
 public:
  explicit InvalidParams(const std::string& what)
      : Error(ErrorCategory::usage, what) {}
};

/// Invalid option values that are not model parameters (draw counts, sweep
/// ranges, column selections).
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCategory::usage, what) {}
};

/// An income that is zero or negative cannot be log-transformed.
///
/// `row()` is the 0-based pair index for in-memory samples and the 1-based
/// file line number when raised by the CSV loader.
class NonPositiveIncome : public Error {
 public:
  NonPositiveIncome(std::size_t row, const std::string& what)
      : Error(ErrorCategory::data, what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// One margin of the sample is constant, so slopes and correlations are
/// undefined.
class ZeroVariance : public Error {
 public:
  ZeroVariance(std::string margin, const std::string& what)
      : Error(ErrorCategory::data, what), margin_(std::move(margin)) {}

  const std::string& margin() const noexcept { return margin_; }

 private:
  std::string margin_;
};

class InsufficientData : public Error {
 public:
  explicit InsufficientData(const std::string& what)
      : Error(ErrorCategory::data, what) {}
};

/// A CSV cell could not be parsed. `row()` is the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::string column, const std::string& what)
      : Error(ErrorCategory::data, what), row_(row), column_(std::move(column)) {}

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

class MissingColumn : public Error {
 public:
  explicit MissingColumn(const std::string& what)
      : Error(ErrorCategory::data, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

/// The child-parent gap is a point mass at zero, so P(Z > 0) is undefined
/// under the limit convention.
class DegenerateGap : public Error {
 public:
  explicit DegenerateGap(const std::string& what)
      : Error(ErrorCategory::numeric, what) {}
};

class NonFiniteInput : public Error {
 public:
  explicit NonFiniteInput(const std::string& what)
      : Error(ErrorCategory::numeric, what) {}
};

}  // namespace mobility
