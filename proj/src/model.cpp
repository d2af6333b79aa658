#include "mobility/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mobility/error.hpp"
#include "mobility/normal.hpp"

namespace mobility {

ModelParams::ModelParams(const ParamValues& values) : v_(values) {
  const auto require_finite = [](double v, const char* name) {
    if (!std::isfinite(v)) throw InvalidParams(std::string(name) + " must be finite");
  };
  require_finite(v_.mu_p, "mu_p");
  require_finite(v_.sigma_p, "sigma_p");
  require_finite(v_.mu_c, "mu_c");
  require_finite(v_.sigma_c, "sigma_c");
  require_finite(v_.rho, "rho");
  if (!(v_.sigma_p > 0.0)) throw InvalidParams("sigma_p must be > 0");
  if (!(v_.sigma_c > 0.0)) throw InvalidParams("sigma_c must be > 0");
  if (v_.rho < -1.0 || v_.rho > 1.0) throw InvalidParams("rho must lie in [-1, 1]");
}

std::string_view to_string(Source source) {
  switch (source) {
    case Source::analytic: return "analytic";
    case Source::empirical: return "empirical";
    case Source::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

Source source_from_string(std::string_view name) {
  if (name == "analytic") return Source::analytic;
  if (name == "empirical") return Source::empirical;
  if (name == "monte_carlo") return Source::monte_carlo;
  throw InvalidArgument("unknown measure source '" + std::string(name) + "'");
}

MobilityReport MobilityReport::make(double beta, double alpha, double absolute_mobility,
                                    Source source, std::optional<double> std_error) {
  if (!(absolute_mobility >= 0.0 && absolute_mobility <= 1.0)) {
    throw InvalidArgument("absolute mobility must lie in [0, 1]");
  }
  if (std_error && !(*std_error >= 0.0)) {
    throw InvalidArgument("standard error must be >= 0");
  }
  return MobilityReport{beta, alpha, 1.0 - beta, absolute_mobility, source, std_error};
}

double ige_beta(const ModelParams& params) {
  return params.rho() * params.sigma_c() / params.sigma_p();
}

double relative_mobility(const ModelParams& params) { return 1.0 - ige_beta(params); }

double population_alpha(const ModelParams& params) {
  return params.mu_c() - ige_beta(params) * params.mu_p();
}

GapDistribution gap_distribution(const ModelParams& params) {
  const double beta = ige_beta(params);
  const double sp2 = params.sigma_p() * params.sigma_p();
  const double variance = sp2 * (1.0 - 2.0 * beta) + params.sigma_c() * params.sigma_c();
  return {params.mu_c() - params.mu_p(), std::max(variance, 0.0)};
}

double absolute_mobility(const ModelParams& params) {
  const GapDistribution gap = gap_distribution(params);
  if (gap.variance == 0.0) {
    if (gap.mean > 0.0) return 1.0;
    if (gap.mean < 0.0) return 0.0;
    throw DegenerateGap("absolute mobility undefined: child and parent log-incomes coincide");
  }
  return std_normal_cdf(gap.mean / std::sqrt(gap.variance));
}

MobilityReport analytic_report(const ModelParams& params) {
  return MobilityReport::make(ige_beta(params), population_alpha(params),
                              absolute_mobility(params), Source::analytic);
}

}  // namespace mobility
