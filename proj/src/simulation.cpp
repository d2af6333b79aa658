#include "mobility/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "mobility/error.hpp"

namespace mobility {

SimConfig::SimConfig(ModelParams params, std::size_t n_draws, std::uint64_t seed)
    : params_(params), n_draws_(n_draws), seed_(seed) {
  if (n_draws_ == 0) throw InvalidArgument("number of draws must be >= 1");
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (chunk + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double StandardNormalPairs::uniform_signed() {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

std::pair<double, double> StandardNormalPairs::next() {
  for (;;) {
    const double u = uniform_signed();
    const double v = uniform_signed();
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double scale = std::sqrt(-2.0 * std::log(s) / s);
      return {u * scale, v * scale};
    }
  }
}

namespace {

void fill_chunk(const ModelParams& p, std::uint64_t seed, std::size_t chunk,
                std::size_t begin, std::size_t end, std::vector<double>& parent,
                std::vector<double>& child) {
  StandardNormalPairs normals(chunk_seed(seed, chunk));
  const double rho = p.rho();
  const double residual = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = begin; i < end; ++i) {
    const auto [z1, z2] = normals.next();
    parent[i] = p.mu_p() + p.sigma_p() * z1;
    child[i] = p.mu_c() + p.sigma_c() * (rho * z1 + residual * z2);
  }
}

}  // namespace

LogIncomeSample sample_pairs(const SimConfig& config, unsigned workers) {
  const std::size_t n = config.n_draws();
  const std::size_t chunks = (n + kSimulationChunkSize - 1) / kSimulationChunkSize;
  std::vector<double> parent(n);
  std::vector<double> child(n);

  const auto run_chunks = [&](std::size_t first, std::size_t stride) {
    for (std::size_t c = first; c < chunks; c += stride) {
      const std::size_t begin = c * kSimulationChunkSize;
      const std::size_t end = std::min(n, begin + kSimulationChunkSize);
      fill_chunk(config.params(), config.seed(), c, begin, end, parent, child);
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t used = std::min<std::size_t>(workers, chunks);
  if (used <= 1) {
    run_chunks(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(used);
    for (std::size_t w = 0; w < used; ++w) pool.emplace_back(run_chunks, w, used);
  }
  return LogIncomeSample(std::move(parent), std::move(child));
}

MonteCarloEstimate mc_absolute_mobility(const SimConfig& config) {
  const LogIncomeSample sample = sample_pairs(config);
  const double value = empirical_absolute_mobility(sample);
  const double n = static_cast<double>(sample.size());
  return {value, std::sqrt(value * (1.0 - value) / n), sample.size()};
}

RegressionFit mc_regression(const SimConfig& config) { return ols_fit(sample_pairs(config)); }

MobilityReport monte_carlo_report(const SimConfig& config) {
  const LogIncomeSample sample = sample_pairs(config);
  const RegressionFit fit = ols_fit(sample);
  const double value = empirical_absolute_mobility(sample);
  const double se = std::sqrt(value * (1.0 - value) / static_cast<double>(sample.size()));
  return MobilityReport::make(fit.beta, fit.alpha, value, Source::monte_carlo, se);
}

}  // namespace mobility
