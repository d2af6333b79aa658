#include "mobility/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "mobility/error.hpp"
#include "mobility/figure.hpp"
#include "mobility/format.hpp"

namespace mobility::cli {

int exit_code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::usage: return kUsage;
    case ErrorCategory::data: return kData;
    case ErrorCategory::numeric: return kNumeric;
  }
  return kInternal;
}

ReportDocument cmd_measure(const ModelParams& params) {
  ReportDocument doc;
  doc.params = params;
  doc.measures.push_back(analytic_report(params));
  return doc;
}

ReportDocument cmd_fit(const Sample& sample) {
  const LogIncomeSample logs = as_log_sample(sample);
  const ModelParams fitted = fit_params(logs);
  const RegressionFit fit = ols_fit(logs);
  const double upward = std::visit(
      [](const auto& s) { return empirical_absolute_mobility(s); }, sample);

  ReportDocument doc;
  doc.params = fitted;
  doc.fit = fit;
  doc.measures.push_back(empirical_report(fit, upward));
  doc.measures.push_back(analytic_report(fitted));
  doc.metadata.n = logs.size();
  return doc;
}

SimulateOutput cmd_simulate(const SimConfig& config, IncomeScale scale) {
  const LogIncomeSample sample = sample_pairs(config);
  const RegressionFit fit = ols_fit(sample);
  const double upward = empirical_absolute_mobility(sample);
  const double n = static_cast<double>(sample.size());

  SimulateOutput result;
  result.sample_csv = write_sample_csv(sample, scale);
  ReportDocument& doc = result.report;
  doc.params = config.params();
  doc.fit = fit;
  doc.measures.push_back(MobilityReport::make(fit.beta, fit.alpha, upward, Source::monte_carlo,
                                              std::sqrt(upward * (1.0 - upward) / n)));
  doc.measures.push_back(analytic_report(config.params()));
  doc.metadata.seed = config.seed();
  doc.metadata.n = config.n_draws();
  return result;
}

namespace {

double* param_slot(ParamValues& v, std::string_view name) {
  if (name == "mu_p") return &v.mu_p;
  if (name == "sigma_p") return &v.sigma_p;
  if (name == "mu_c") return &v.mu_c;
  if (name == "sigma_c") return &v.sigma_c;
  if (name == "rho") return &v.rho;
  return nullptr;
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(v)) {
    throw InvalidArgument("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::vector<double> SweepAxis::values() const {
  const double count_f = std::floor((stop - start) / step + 1e-9);
  const auto count = static_cast<std::size_t>(count_f) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double v = start + static_cast<double>(i) * step;
    if (std::fabs(v - stop) <= 1e-9 * step) v = stop;
    out.push_back(v);
  }
  return out;
}

SweepAxis parse_sweep_axis(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw InvalidArgument("sweep axis must look like name=start:stop:step");
  }
  SweepAxis axis;
  axis.name = std::string(text.substr(0, eq));
  std::replace(axis.name.begin(), axis.name.end(), '-', '_');
  ParamValues probe;
  if (!param_slot(probe, axis.name)) {
    throw InvalidArgument("unknown sweep parameter '" + axis.name + "'");
  }
  const std::string_view range = text.substr(eq + 1);
  const auto c1 = range.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : range.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw InvalidArgument("sweep range must look like start:stop:step");
  }
  axis.start = parse_double(range.substr(0, c1), "sweep start");
  axis.stop = parse_double(range.substr(c1 + 1, c2 - c1 - 1), "sweep stop");
  axis.step = parse_double(range.substr(c2 + 1), "sweep step");
  if (!(axis.step > 0.0)) throw InvalidArgument("sweep step must be > 0");
  if (axis.stop < axis.start) throw InvalidArgument("sweep stop must be >= start");
  if ((axis.stop - axis.start) / axis.step > 1e7) throw InvalidArgument("sweep grid too large");
  return axis;
}

std::string cmd_sweep(const ParamValues& base, std::span<const SweepAxis> axes) {
  if (axes.empty() || axes.size() > 2) throw InvalidArgument("sweep takes one or two axes");
  if (axes.size() == 2 && axes[0].name == axes[1].name) {
    throw InvalidArgument("sweep axes must vary different parameters");
  }
  std::string out;
  for (const SweepAxis& a : axes) out += a.name + ",";
  out += "beta,relative_mobility,absolute_mobility\n";

  // Build the whole grid first so invalid points fail before any output.
  std::vector<ParamValues> grid;
  const std::vector<double> outer = axes[0].values();
  const std::vector<double> inner = axes.size() == 2 ? axes[1].values() : std::vector<double>{};
  for (double a : outer) {
    ParamValues v = base;
    *param_slot(v, axes[0].name) = a;
    if (inner.empty()) {
      grid.push_back(v);
      continue;
    }
    for (double b : inner) {
      *param_slot(v, axes[1].name) = b;
      grid.push_back(v);
    }
  }
  std::vector<ModelParams> params;
  params.reserve(grid.size());
  for (const ParamValues& v : grid) params.emplace_back(v);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    ParamValues v = grid[i];
    for (const SweepAxis& a : axes) out += format_number(*param_slot(v, a.name)) + ',';
    const ModelParams& p = params[i];
    out += format_number(ige_beta(p)) + ',' + format_number(relative_mobility(p)) + ',' +
           format_number(absolute_mobility(p)) + '\n';
  }
  return out;
}

std::string cmd_plot(const LogIncomeSample& sample) {
  return render_figure(sample, ols_fit(sample));
}

namespace {

struct ParamFlags {
  std::map<std::string, std::optional<double>> values = {
      {"mu_p", {}}, {"sigma_p", {}}, {"mu_c", {}}, {"sigma_c", {}}, {"rho", {}}};

  void attach(CLI::App& app) {
    app.add_option("--mu-p", values["mu_p"], "Mean of parent log-income");
    app.add_option("--sigma-p", values["sigma_p"], "Std. deviation of parent log-income");
    app.add_option("--mu-c", values["mu_c"], "Mean of child log-income");
    app.add_option("--sigma-c", values["sigma_c"], "Std. deviation of child log-income");
    app.add_option("--rho", values["rho"], "Correlation of parent and child log-incomes");
  }

  // Raw values with every parameter present except those in `optional_names`.
  ParamValues collect(const std::vector<std::string>& optional_names = {}) const {
    ParamValues v;
    for (const auto& [name, value] : values) {
      if (value) {
        *param_slot(v, name) = *value;
      } else if (std::find(optional_names.begin(), optional_names.end(), name) ==
                 optional_names.end()) {
        std::string flag = "--" + name;
        std::replace(flag.begin(), flag.end(), '_', '-');
        throw InvalidArgument("missing required flag " + flag);
      }
    }
    return v;
  }

  bool any() const {
    return std::any_of(values.begin(), values.end(), [](const auto& kv) { return kv.second; });
  }
};

struct DatasetFlags {
  std::string input;
  std::string parent_column = "parent";
  std::string child_column = "child";
  bool no_header = false;
  IncomeScale scale = IncomeScale::raw_money;

  void attach(CLI::App& app, bool required) {
    auto* opt = app.add_option("--input", input, "CSV file of parent/child incomes");
    if (required) opt->required();
    app.add_option("--parent-column", parent_column,
                   "Parent column: header name, or 0-based index")
        ->capture_default_str();
    app.add_option("--child-column", child_column, "Child column: header name, or 0-based index")
        ->capture_default_str();
    app.add_flag("--no-header", no_header, "First line is data, not a header");
    add_scale_option(app, scale, "Income units in the file");
  }

  static ColumnRef column(const std::string& text) {
    if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return static_cast<std::size_t>(std::stoull(text));
    }
    return text;
  }

  DatasetSpec spec() const {
    return DatasetSpec{input, column(parent_column), column(child_column), !no_header, scale};
  }

  static void add_scale_option(CLI::App& app, IncomeScale& target, const std::string& help) {
    const std::map<std::string, IncomeScale> names = {{"raw", IncomeScale::raw_money},
                                                      {"log", IncomeScale::already_log}};
    app.add_option("--scale", target, help + " (raw|log)")
        ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
  }
};

struct OutputFlags {
  std::string output;
  ReportFormat format = ReportFormat::json;
  std::optional<std::string> timestamp;

  void attach(CLI::App& app, bool with_format) {
    app.add_option("--output", output, "Write to this file instead of stdout");
    if (with_format) {
      const std::map<std::string, ReportFormat> names = {{"json", ReportFormat::json},
                                                         {"csv", ReportFormat::csv}};
      app.add_option("--format", format, "Report format (json|csv)")
          ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
      app.add_option("--timestamp", timestamp, "Timestamp string recorded in the report");
    }
  }
};

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intergenerational mobility measures under a bivariate normal model", "mobility"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // measure
  auto* measure = app.add_subcommand("measure", "Closed-form beta, 1 - beta and A");
  ParamFlags measure_params;
  OutputFlags measure_out;
  measure_params.attach(*measure);
  measure_out.attach(*measure, true);

  // fit
  auto* fit = app.add_subcommand("fit", "Estimate parameters and measures from a CSV dataset");
  DatasetFlags fit_data;
  OutputFlags fit_out;
  fit_data.attach(*fit, true);
  fit_out.attach(*fit, true);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Draw a seeded sample and a Monte Carlo report");
  ParamFlags sim_params;
  std::size_t sim_n = 0;
  std::uint64_t sim_seed = 1;
  std::string sim_sample_path;
  std::string sim_report_path;
  IncomeScale sim_scale = IncomeScale::already_log;
  OutputFlags sim_out;
  sim_params.attach(*simulate);
  simulate->add_option("--n", sim_n, "Number of draws")->required();
  simulate->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
  simulate->add_option("--output", sim_sample_path, "Sample CSV path")->required();
  simulate->add_option("--report", sim_report_path, "Report path (default stdout)");
  DatasetFlags::add_scale_option(*simulate, sim_scale, "Units written to the sample CSV");
  {
    const std::map<std::string, ReportFormat> names = {{"json", ReportFormat::json},
                                                       {"csv", ReportFormat::csv}};
    simulate->add_option("--format", sim_out.format, "Report format (json|csv)")
        ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
    simulate->add_option("--timestamp", sim_out.timestamp, "Timestamp string recorded in the report");
  }

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Tabulate measures over a parameter grid");
  ParamFlags sweep_params;
  std::vector<std::string> sweep_axes;
  OutputFlags sweep_out;
  sweep_params.attach(*sweep);
  sweep->add_option("--vary", sweep_axes, "name=start:stop:step (once or twice)")->required();
  sweep_out.attach(*sweep, false);

  // plot
  auto* plot = app.add_subcommand("plot", "SVG scatter with identity and regression lines");
  ParamFlags plot_params;
  std::size_t plot_n = 100;
  std::uint64_t plot_seed = 1;
  DatasetFlags plot_data;
  OutputFlags plot_out;
  plot_params.attach(*plot);
  plot->add_option("--n", plot_n, "Number of simulated draws")->capture_default_str();
  plot->add_option("--seed", plot_seed, "Random seed")->capture_default_str();
  plot_data.attach(*plot, false);
  plot_out.attach(*plot, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*measure) {
      ReportDocument doc = cmd_measure(ModelParams(measure_params.collect()));
      doc.metadata.timestamp = measure_out.timestamp;
      emit(measure_out.output, write_report(doc, measure_out.format), out);
    } else if (*fit) {
      ReportDocument doc = cmd_fit(load_csv(fit_data.spec()));
      doc.metadata.timestamp = fit_out.timestamp;
      emit(fit_out.output, write_report(doc, fit_out.format), out);
    } else if (*simulate) {
      const SimConfig config(ModelParams(sim_params.collect()), sim_n, sim_seed);
      SimulateOutput result = cmd_simulate(config, sim_scale);
      result.report.metadata.timestamp = sim_out.timestamp;
      emit(sim_sample_path, result.sample_csv, out);
      emit(sim_report_path, write_report(result.report, sim_out.format), out);
    } else if (*sweep) {
      std::vector<SweepAxis> axes;
      std::vector<std::string> varied;
      for (const std::string& text : sweep_axes) {
        axes.push_back(parse_sweep_axis(text));
        varied.push_back(axes.back().name);
      }
      emit(sweep_out.output, cmd_sweep(sweep_params.collect(varied), axes), out);
    } else if (*plot) {
      const bool from_file = !plot_data.input.empty();
      if (from_file && plot_params.any()) {
        throw InvalidArgument("plot takes either model flags or --input, not both");
      }
      const LogIncomeSample sample =
          from_file ? as_log_sample(load_csv(plot_data.spec()))
                    : sample_pairs(SimConfig(ModelParams(plot_params.collect()), plot_n, plot_seed));
      emit(plot_out.output, cmd_plot(sample), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace mobility::cli
