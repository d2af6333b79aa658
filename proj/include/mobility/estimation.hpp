#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mobility/model.hpp"

namespace mobility {

/// Paired incomes in money terms, parent first. Every income must be finite
/// and strictly positive (NonPositiveIncome otherwise, with the pair index).
/// Sample size requirements are enforced by the estimators, not here.
class IncomeSample {
 public:
  IncomeSample(std::vector<double> parent, std::vector<double> child);

  std::size_t size() const noexcept { return parent_.size(); }
  std::span<const double> parent() const noexcept { return parent_; }
  std::span<const double> child() const noexcept { return child_; }

 private:
  std::vector<double> parent_;
  std::vector<double> child_;
};

/// Paired log-incomes, parent first. Values must be finite.
class LogIncomeSample {
 public:
  LogIncomeSample(std::vector<double> parent, std::vector<double> child);

  std::size_t size() const noexcept { return parent_.size(); }
  std::span<const double> parent() const noexcept { return parent_; }
  std::span<const double> child() const noexcept { return child_; }

  friend bool operator==(const LogIncomeSample&, const LogIncomeSample&) = default;

 private:
  std::vector<double> parent_;
  std::vector<double> child_;
};

/// Least-squares line child = alpha + beta * parent.
struct RegressionFit {
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t n = 0;
  double residual_variance = 0.0;  // mean squared residual (divides by n)
};

/// Element-wise natural log, pair order preserved.
LogIncomeSample log_transform(const IncomeSample& sample);

/// Moment estimates of the five model parameters: sample means, standard
/// deviations with the n - 1 denominator and the Pearson correlation.
///
/// Throws InsufficientData for n < 2 and ZeroVariance when a margin is
/// constant.
ModelParams fit_params(const LogIncomeSample& sample);

/// Ordinary least squares of child on parent log-income.
/// Throws InsufficientData for n < 2 and ZeroVariance for a constant parent
/// margin.
RegressionFit ols_fit(const LogIncomeSample& sample);

/// Fraction of pairs whose child strictly out-earns the parent. Ties are not
/// upward-mobile. Requires n >= 1 (InsufficientData otherwise).
double empirical_absolute_mobility(const IncomeSample& sample);
double empirical_absolute_mobility(const LogIncomeSample& sample);

/// OLS slope and intercept, the empirical A and their source tag.
MobilityReport empirical_report(const RegressionFit& fit, double absolute_mobility);

}  // namespace mobility
