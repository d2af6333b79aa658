#pragma once

#include <optional>
#include <string_view>

namespace mobility {

/// Raw parameter values, in the order the model is usually written down.
/// Intended for designated initialisation:
///   ModelParams{{.mu_p = 10.1, .sigma_p = 0.78, .mu_c = 10.25, .sigma_c = 1.15, .rho = 0.57}}
struct ParamValues {
  double mu_p = 0.0;
  double sigma_p = 1.0;
  double mu_c = 0.0;
  double sigma_c = 1.0;
  double rho = 0.0;
};

/// Bivariate normal model of (parent, child) log-incomes.
///
/// Parent log-income ~ N(mu_p, sigma_p^2), child log-income ~ N(mu_c, sigma_c^2),
/// correlation rho. Construction is the only validation point: sigmas must be
/// strictly positive, rho must lie in [-1, 1] (both ends included) and every
/// value must be finite. Throws InvalidParams otherwise.
class ModelParams {
 public:
  explicit ModelParams(const ParamValues& values);

  double mu_p() const noexcept { return v_.mu_p; }
  double sigma_p() const noexcept { return v_.sigma_p; }
  double mu_c() const noexcept { return v_.mu_c; }
  double sigma_c() const noexcept { return v_.sigma_c; }
  double rho() const noexcept { return v_.rho; }
  const ParamValues& values() const noexcept { return v_; }

  friend bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.v_.mu_p == b.v_.mu_p && a.v_.sigma_p == b.v_.sigma_p &&
           a.v_.mu_c == b.v_.mu_c && a.v_.sigma_c == b.v_.sigma_c && a.v_.rho == b.v_.rho;
  }

 private:
  ParamValues v_;
};

/// Distribution of the gap Z = X_c - X_p, which is normal under the model.
struct GapDistribution {
  double mean = 0.0;
  double variance = 0.0;
};

enum class Source { analytic, empirical, monte_carlo };

std::string_view to_string(Source source);
/// Throws InvalidArgument for unknown names.
Source source_from_string(std::string_view name);

/// Relative and absolute mobility measures reported together.
///
/// Build through `make`, which fixes relative_mobility = 1 - beta and rejects
/// an absolute_mobility outside [0, 1].
struct MobilityReport {
  double beta = 0.0;
  double alpha = 0.0;
  double relative_mobility = 1.0;
  double absolute_mobility = 0.0;
  Source source = Source::analytic;
  // Binomial standard error, only known for Monte Carlo estimates.
  std::optional<double> absolute_mobility_std_error;

  static MobilityReport make(double beta, double alpha, double absolute_mobility, Source source,
                             std::optional<double> std_error = std::nullopt);
};

/// Intergenerational earnings elasticity: rho * sigma_c / sigma_p.
double ige_beta(const ModelParams& params);

/// 1 - ige_beta(params).
double relative_mobility(const ModelParams& params);

/// Population regression intercept mu_c - beta * mu_p.
double population_alpha(const ModelParams& params);

/// Mean mu_c - mu_p and variance sigma_p^2 (1 - 2 beta) + sigma_c^2 of the gap.
/// The variance is clamped at zero to absorb rounding when rho == 1.
GapDistribution gap_distribution(const ModelParams& params);

/// P(X_c > X_p) = Phi((mu_c - mu_p) / sd(Z)).
///
/// For a point-mass gap (variance 0) this is 1 when mu_c > mu_p and 0 when
/// mu_c < mu_p. Throws DegenerateGap when the gap is identically zero.
double absolute_mobility(const ModelParams& params);

/// All closed-form measures at `params`, tagged Source::analytic.
MobilityReport analytic_report(const ModelParams& params);

}  // namespace mobility
