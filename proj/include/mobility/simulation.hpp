#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

#include "mobility/estimation.hpp"
#include "mobility/model.hpp"

namespace mobility {

/// Draws are generated in fixed-size chunks, each with its own engine seeded
/// from (seed, chunk index). The chunk layout is part of the output contract:
/// a sample depends only on (params, n_draws, seed), never on worker count.
inline constexpr std::size_t kSimulationChunkSize = std::size_t{1} << 16;

/// Throws InvalidArgument when n_draws is zero.
class SimConfig {
 public:
  SimConfig(ModelParams params, std::size_t n_draws, std::uint64_t seed);

  const ModelParams& params() const noexcept { return params_; }
  std::size_t n_draws() const noexcept { return n_draws_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  ModelParams params_;
  std::size_t n_draws_;
  std::uint64_t seed_;
};

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_draws = 0;
};

/// SplitMix64 finaliser applied to seed + golden-ratio multiples of
/// (chunk + 1). Seeds the std::mt19937_64 engine of one chunk.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept;

/// Pairs of independent standard normals from the Marsaglia polar method on
/// top of std::mt19937_64. Uniforms take the top 53 bits of each output.
/// std::mt19937_64 is fully specified by the standard, so streams are
/// reproducible across standard libraries (unlike std::normal_distribution).
class StandardNormalPairs {
 public:
  explicit StandardNormalPairs(std::uint64_t seed) : engine_(seed) {}

  std::pair<double, double> next();

 private:
  double uniform_signed();  // uniform on [-1, 1)

  std::mt19937_64 engine_;
};

/// Draws n_draws (parent, child) log-income pairs:
///   X_p = mu_p + sigma_p Z1,  X_c = mu_c + sigma_c (rho Z1 + sqrt(1 - rho^2) Z2).
/// `workers` = 0 picks the hardware concurrency. Output is identical for
/// every worker count.
LogIncomeSample sample_pairs(const SimConfig& config, unsigned workers = 0);

/// Fraction of simulated pairs with X_c > X_p and its binomial standard error.
MonteCarloEstimate mc_absolute_mobility(const SimConfig& config);

/// OLS fit of the simulated sample. Needs n_draws >= 2.
RegressionFit mc_regression(const SimConfig& config);

/// Monte Carlo counterpart of analytic_report: OLS alpha/beta and the
/// simulated upward fraction, both from the one simulated sample.
MobilityReport monte_carlo_report(const SimConfig& config);

}  // namespace mobility
