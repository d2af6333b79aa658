#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "mobility/error.hpp"
#include "mobility/model.hpp"
#include "mobility/normal.hpp"
#include "oracles.hpp"

using namespace mobility;

namespace {

const ModelParams kReference{{.mu_p = 10.1, .sigma_p = 0.78, .mu_c = 10.25, .sigma_c = 1.15, .rho = 0.57}};

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mu(-5.0, 15.0);
  std::uniform_real_distribution<double> sigma(0.05, 3.0);
  std::uniform_real_distribution<double> rho(-0.99, 0.99);
  return ModelParams({.mu_p = mu(rng), .sigma_p = sigma(rng), .mu_c = mu(rng),
                      .sigma_c = sigma(rng), .rho = rho(rng)});
}

}  // namespace

TEST_SUITE("model params") {
  TEST_CASE("validation at construction") {
    CHECK_THROWS_AS(ModelParams({.sigma_p = 0.0}), InvalidParams);
    CHECK_THROWS_AS(ModelParams({.sigma_c = -1.0}), InvalidParams);
    CHECK_THROWS_AS(ModelParams({.rho = 1.0000001}), InvalidParams);
    CHECK_THROWS_AS(ModelParams({.rho = -1.5}), InvalidParams);
    CHECK_THROWS_AS(ModelParams({.mu_p = std::numeric_limits<double>::quiet_NaN()}),
                    InvalidParams);
    CHECK_THROWS_AS(ModelParams({.mu_c = std::numeric_limits<double>::infinity()}),
                    InvalidParams);
    CHECK_NOTHROW(ModelParams({.rho = 1.0}));
    CHECK_NOTHROW(ModelParams({.rho = -1.0}));
  }
}

TEST_SUITE("closed forms") {
  TEST_CASE("ige_beta") {
    // 0.84 to two places, 0.840385 to six.
    CHECK(std::fabs(ige_beta(kReference) - 0.840385) <= 1e-6);
    CHECK(std::fabs(ige_beta(kReference) - 0.84) < 5e-3);
    CHECK(ige_beta(ModelParams({.sigma_p = 0.3, .sigma_c = 2.0, .rho = 0.0})) == 0.0);
    CHECK(ige_beta(ModelParams({.sigma_p = 1.7, .sigma_c = 1.7, .rho = 0.5})) == 0.5);
  }

  TEST_CASE("relative_mobility") {
    CHECK(std::fabs(relative_mobility(kReference) - 0.159615) <= 1e-6);
    CHECK(relative_mobility(ModelParams({.sigma_p = 0.3, .sigma_c = 2.0, .rho = 0.0})) == 1.0);
    CHECK(relative_mobility(ModelParams({.sigma_p = 0.9, .sigma_c = 0.9, .rho = 1.0})) == 0.0);
  }

  TEST_CASE("population_alpha") {
    const long double expected = 10.25L - (0.57L * 1.15L / 0.78L) * 10.1L;
    CHECK(static_cast<double>(expected) == doctest::Approx(population_alpha(kReference)).epsilon(1e-13));
    CHECK(std::fabs(population_alpha(kReference) - 1.76211) <= 1e-5);
    CHECK(population_alpha(ModelParams({.mu_p = 0.0, .mu_c = 0.0, .rho = 0.4})) == 0.0);
    CHECK(population_alpha(ModelParams({.mu_p = 3.0, .mu_c = 5.0, .rho = 0.0})) == 5.0);
  }

  TEST_CASE("gap_distribution") {
    const GapDistribution gap = gap_distribution(kReference);
    CHECK(gap.mean == doctest::Approx(0.15).epsilon(1e-14));
    // 0.78^2 + 1.15^2 - 2 * 0.57 * 0.78 * 1.15 = 0.6084 + 1.3225 - 1.02258
    CHECK(gap.variance == doctest::Approx(0.90832).epsilon(1e-13));

    const GapDistribution indep =
        gap_distribution(ModelParams({.sigma_p = 0.6, .sigma_c = 1.3, .rho = 0.0}));
    CHECK(indep.variance == doctest::Approx(0.36 + 1.69).epsilon(1e-15));

    const GapDistribution degen =
        gap_distribution(ModelParams({.mu_p = 2.0, .sigma_p = 0.8, .mu_c = 2.0, .sigma_c = 0.8, .rho = 1.0}));
    CHECK(degen.mean == 0.0);
    CHECK(degen.variance == 0.0);
  }

  TEST_CASE("absolute_mobility at the reference parameters") {
    const double a = absolute_mobility(kReference);
    CHECK(std::fabs(a - 0.56253) <= 1e-5);

    // Independent Monte Carlo: libstdc++ normal_distribution on a different
    // engine, not the library sampler.
    std::mt19937 rng(20240611);
    std::normal_distribution<double> z;
    const std::size_t n = 1'000'000;
    std::size_t up = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z1 = z(rng);
      const double z2 = z(rng);
      const double xp = 10.1 + 0.78 * z1;
      const double xc = 10.25 + 1.15 * (0.57 * z1 + std::sqrt(1 - 0.57 * 0.57) * z2);
      if (xc > xp) ++up;
    }
    const double mc = static_cast<double>(up) / n;
    CHECK(std::fabs(mc - a) <= 4.0 * std::sqrt(a * (1 - a) / n));
  }

  TEST_CASE("absolute_mobility special cases") {
    CHECK(absolute_mobility(ModelParams({.mu_p = 4.0, .sigma_p = 0.5, .mu_c = 4.0, .sigma_c = 2.0, .rho = 0.3})) == 0.5);
    CHECK(absolute_mobility(ModelParams({.mu_p = 1.0, .sigma_p = 0.7, .mu_c = 1.2, .sigma_c = 0.7, .rho = 1.0})) == 1.0);
    CHECK(absolute_mobility(ModelParams({.mu_p = 1.2, .sigma_p = 0.7, .mu_c = 1.0, .sigma_c = 0.7, .rho = 1.0})) == 0.0);
    CHECK_THROWS_AS(absolute_mobility(ModelParams({.mu_p = 1.0, .sigma_p = 0.7, .mu_c = 1.0, .sigma_c = 0.7, .rho = 1.0})),
                    DegenerateGap);
    // rho = 1 with unequal dispersions is not degenerate.
    const ModelParams unequal({.mu_p = 0.0, .sigma_p = 1.0, .mu_c = 0.0, .sigma_c = 2.0, .rho = 1.0});
    CHECK(gap_distribution(unequal).variance == doctest::Approx(1.0));
    CHECK(absolute_mobility(unequal) == 0.5);
  }

  TEST_CASE("analytic_report bundles the closed forms") {
    const MobilityReport r = analytic_report(kReference);
    CHECK(r.source == Source::analytic);
    CHECK(r.beta == ige_beta(kReference));
    CHECK(r.alpha == population_alpha(kReference));
    CHECK(r.relative_mobility == 1.0 - r.beta);
    CHECK(r.absolute_mobility == absolute_mobility(kReference));
    CHECK_FALSE(r.absolute_mobility_std_error.has_value());
  }

  TEST_CASE("MobilityReport::make enforces its invariants") {
    const MobilityReport r = MobilityReport::make(0.3, 1.0, 0.25, Source::empirical);
    CHECK(r.relative_mobility == 1.0 - 0.3);
    CHECK_THROWS_AS(MobilityReport::make(0.3, 1.0, 1.5, Source::empirical), InvalidArgument);
    CHECK_THROWS_AS(MobilityReport::make(0.3, 1.0, -0.1, Source::empirical), InvalidArgument);
    CHECK_THROWS_AS(MobilityReport::make(0.3, 1.0, 0.5, Source::monte_carlo, -1.0), InvalidArgument);
    CHECK(source_from_string(to_string(Source::monte_carlo)) == Source::monte_carlo);
    CHECK_THROWS_AS(source_from_string("guess"), InvalidArgument);
  }
}

TEST_SUITE("model properties") {
  TEST_CASE("two-form gap variance identity") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 5000; ++i) {
      const ModelParams p = random_params(rng);
      const double direct = p.sigma_p() * p.sigma_p() + p.sigma_c() * p.sigma_c() -
                            2.0 * p.rho() * p.sigma_p() * p.sigma_c();
      const double scale = p.sigma_p() * p.sigma_p() + p.sigma_c() * p.sigma_c();
      CHECK(direct >= 0.0);
      CHECK(std::fabs(gap_distribution(p).variance - direct) <= 1e-12 * scale);
    }
  }

  TEST_CASE("A is interior, matches Phi of the standardised gap, increases in the gap") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> z(-7.5, 7.5);
    for (int i = 0; i < 2000; ++i) {
      const ModelParams base = random_params(rng);
      const double sd = std::sqrt(gap_distribution(base).variance);
      // Place the gap at a chosen standardised value so A stays representable.
      const double z1 = z(rng);
      const double z2 = z1 + 0.05 + 0.1 * std::fabs(z(rng));
      const auto with_gap = [&](double zz) {
        return ModelParams({.mu_p = base.mu_p(), .sigma_p = base.sigma_p(),
                            .mu_c = base.mu_p() + zz * sd, .sigma_c = base.sigma_c(),
                            .rho = base.rho()});
      };
      const double a1 = absolute_mobility(with_gap(z1));
      CHECK(a1 > 0.0);
      CHECK(a1 < 1.0);
      CHECK(a1 == doctest::Approx(oracle::libm_normal_cdf(z1)).epsilon(1e-9));
      if (z2 < 7.5) CHECK(absolute_mobility(with_gap(z2)) > a1);
    }
  }

  TEST_CASE("log-scale invariance") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> log_c(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
      const ModelParams p = random_params(rng);
      const double shift = log_c(rng);
      const ModelParams q({.mu_p = p.mu_p() + shift, .sigma_p = p.sigma_p(),
                           .mu_c = p.mu_c() + shift, .sigma_c = p.sigma_c(), .rho = p.rho()});
      CHECK(ige_beta(q) == ige_beta(p));
      CHECK(relative_mobility(q) == relative_mobility(p));
      CHECK(absolute_mobility(q) == doctest::Approx(absolute_mobility(p)).epsilon(1e-9));
    }
  }
}
