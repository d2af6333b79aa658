#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mobility/csv.hpp"
#include "mobility/error.hpp"
#include "mobility/model.hpp"
#include "mobility/report.hpp"
#include "mobility/simulation.hpp"

namespace mobility::cli {

/// Process exit codes. Anything unexpected maps to kInternal.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,    // bad flags, invalid parameters
  kData = 3,     // unreadable or unsuitable input data
  kNumeric = 4,  // quantity undefined, e.g. a degenerate gap
};

int exit_code_for(ErrorCategory category);

/// Closed-form beta, 1 - beta, population alpha and A.
ReportDocument cmd_measure(const ModelParams& params);

/// Fitted parameters, OLS line, empirical A and the closed forms evaluated at
/// the fitted parameters.
ReportDocument cmd_fit(const Sample& sample);

struct SimulateOutput {
  std::string sample_csv;
  ReportDocument report;
};

/// One simulated sample, written as CSV, plus its Monte Carlo and analytic
/// measures. Needs n_draws >= 2 for the regression.
SimulateOutput cmd_simulate(const SimConfig& config, IncomeScale scale);

struct SweepAxis {
  std::string name;  // mu_p | sigma_p | mu_c | sigma_c | rho
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  /// Grid values start, start + step, ... up to stop (inclusive within 1e-9 step).
  std::vector<double> values() const;
};

/// Parses "name=start:stop:step". Throws InvalidArgument.
SweepAxis parse_sweep_axis(std::string_view text);

/// CSV table over the Cartesian product of one or two axes (the first axis
/// varies slowest): varied values, beta, relative_mobility, absolute_mobility.
std::string cmd_sweep(const ParamValues& base, std::span<const SweepAxis> axes);

/// OLS fit of the sample rendered with render_figure.
std::string cmd_plot(const LogIncomeSample& sample);

/// Full command-line entry point; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mobility::cli
