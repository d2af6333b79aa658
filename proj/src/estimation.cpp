#include "mobility/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mobility/error.hpp"

namespace mobility {

namespace {

// Neumaier-compensated running sum; summation order is the sample order.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Moments {
  std::size_t n = 0;
  double mean_p = 0.0;
  double mean_c = 0.0;
  double sxx = 0.0;  // sum of squared parent deviations
  double syy = 0.0;
  double sxy = 0.0;
};

double mean_of(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  double mean = s.value() / static_cast<double>(xs.size());
  // One refinement pass removes the residual error of the division.
  CompensatedSum r;
  for (double x : xs) r.add(x - mean);
  return mean + r.value() / static_cast<double>(xs.size());
}

bool is_constant(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); });
}

void require_at_least_two(const LogIncomeSample& sample) {
  if (sample.size() < 2) {
    throw InsufficientData("at least 2 pairs required, got " + std::to_string(sample.size()));
  }
}

Moments moments(const LogIncomeSample& sample) {
  const auto parent = sample.parent();
  const auto child = sample.child();
  Moments m;
  m.n = sample.size();
  m.mean_p = mean_of(parent);
  m.mean_c = mean_of(child);
  CompensatedSum sxx, syy, sxy;
  for (std::size_t i = 0; i < m.n; ++i) {
    const double dx = parent[i] - m.mean_p;
    const double dy = child[i] - m.mean_c;
    sxx.add(dx * dx);
    syy.add(dy * dy);
    sxy.add(dx * dy);
  }
  m.sxx = sxx.value();
  m.syy = syy.value();
  m.sxy = sxy.value();
  return m;
}

}  // namespace

IncomeSample::IncomeSample(std::vector<double> parent, std::vector<double> child)
    : parent_(std::move(parent)), child_(std::move(child)) {
  if (parent_.size() != child_.size()) {
    throw InvalidArgument("parent and child columns differ in length");
  }
  for (std::size_t i = 0; i < parent_.size(); ++i) {
    for (double y : {parent_[i], child_[i]}) {
      if (std::isnan(y) || std::isinf(y)) {
        throw NonFiniteInput("pair " + std::to_string(i) + ": income is not finite");
      }
      if (!(y > 0.0)) {
        throw NonPositiveIncome(i, "pair " + std::to_string(i) + ": income must be > 0");
      }
    }
  }
}

LogIncomeSample::LogIncomeSample(std::vector<double> parent, std::vector<double> child)
    : parent_(std::move(parent)), child_(std::move(child)) {
  if (parent_.size() != child_.size()) {
    throw InvalidArgument("parent and child columns differ in length");
  }
  for (std::size_t i = 0; i < parent_.size(); ++i) {
    if (!std::isfinite(parent_[i]) || !std::isfinite(child_[i])) {
      throw NonFiniteInput("pair " + std::to_string(i) + ": log-income is not finite");
    }
  }
}

LogIncomeSample log_transform(const IncomeSample& sample) {
  std::vector<double> parent(sample.size());
  std::vector<double> child(sample.size());
  std::transform(sample.parent().begin(), sample.parent().end(), parent.begin(),
                 [](double y) { return std::log(y); });
  std::transform(sample.child().begin(), sample.child().end(), child.begin(),
                 [](double y) { return std::log(y); });
  return LogIncomeSample(std::move(parent), std::move(child));
}

ModelParams fit_params(const LogIncomeSample& sample) {
  require_at_least_two(sample);
  if (is_constant(sample.parent())) throw ZeroVariance("parent", "parent margin is constant");
  if (is_constant(sample.child())) throw ZeroVariance("child", "child margin is constant");
  const Moments m = moments(sample);
  if (m.sxx == 0.0) throw ZeroVariance("parent", "parent margin has zero variance");
  if (m.syy == 0.0) throw ZeroVariance("child", "child margin has zero variance");
  const double dof = static_cast<double>(m.n - 1);
  const double rho = std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
  return ModelParams({.mu_p = m.mean_p,
                      .sigma_p = std::sqrt(m.sxx / dof),
                      .mu_c = m.mean_c,
                      .sigma_c = std::sqrt(m.syy / dof),
                      .rho = rho});
}

RegressionFit ols_fit(const LogIncomeSample& sample) {
  require_at_least_two(sample);
  if (is_constant(sample.parent())) throw ZeroVariance("parent", "parent margin is constant");
  const Moments m = moments(sample);
  if (m.sxx == 0.0) throw ZeroVariance("parent", "parent margin has zero variance");
  const double beta = m.sxy / m.sxx;
  const double alpha = m.mean_c - beta * m.mean_p;
  CompensatedSum rss;
  const auto parent = sample.parent();
  const auto child = sample.child();
  for (std::size_t i = 0; i < m.n; ++i) {
    // Centred form keeps the residuals accurate when the means are large.
    const double r = (child[i] - m.mean_c) - beta * (parent[i] - m.mean_p);
    rss.add(r * r);
  }
  return {alpha, beta, m.n, std::max(rss.value(), 0.0) / static_cast<double>(m.n)};
}

namespace {

double upward_fraction(std::span<const double> parent, std::span<const double> child) {
  if (parent.empty()) throw InsufficientData("absolute mobility needs at least 1 pair");
  std::size_t upward = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (child[i] > parent[i]) ++upward;
  }
  return static_cast<double>(upward) / static_cast<double>(parent.size());
}

}  // namespace

double empirical_absolute_mobility(const IncomeSample& sample) {
  return upward_fraction(sample.parent(), sample.child());
}

double empirical_absolute_mobility(const LogIncomeSample& sample) {
  return upward_fraction(sample.parent(), sample.child());
}

MobilityReport empirical_report(const RegressionFit& fit, double absolute_mobility) {
  return MobilityReport::make(fit.beta, fit.alpha, absolute_mobility, Source::empirical);
}

}  // namespace mobility
