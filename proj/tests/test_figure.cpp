#include <cmath>
#include <regex>
#include <string>
#include <vector>

#include "doctest.h"
#include "mobility/error.hpp"
#include "mobility/figure.hpp"
#include "mobility/simulation.hpp"

using namespace mobility;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<double> attributes(const std::string& element, const std::vector<std::string>& names) {
  std::vector<double> out;
  for (const auto& name : names) {
    const std::regex re(" " + name + "=\"([-0-9.]+)\"");
    std::smatch m;
    REQUIRE(std::regex_search(element, m, re));
    out.push_back(std::stod(m[1]));
  }
  return out;
}

std::string element(const std::string& svg, const std::string& cls, std::size_t nth = 0) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i <= nth; ++i) {
    pos = svg.find("class=\"" + cls + "\"", i == 0 ? 0 : pos + 1);
    REQUIRE(pos != std::string::npos);
  }
  const auto start = svg.rfind('<', pos);
  return svg.substr(start, svg.find('>', pos) - start + 1);
}

double distance_to_line(double px, double py, const std::vector<double>& l) {
  const double dx = l[2] - l[0], dy = l[3] - l[1];
  return std::fabs(dy * (px - l[0]) - dx * (py - l[1])) / std::hypot(dx, dy);
}

}  // namespace

TEST_SUITE("figure") {
  TEST_CASE("one marker per pair and both reference lines") {
    const LogIncomeSample s = sample_pairs(SimConfig(
        ModelParams({.mu_p = 10.1, .sigma_p = 0.78, .mu_c = 10.25, .sigma_c = 1.15, .rho = 0.57}),
        100, 1));
    const std::string svg = render_figure(s, ols_fit(s));
    CHECK(svg.starts_with("<?xml"));
    CHECK(count(svg, "<circle class=\"marker\"") == 100);
    CHECK(count(svg, "class=\"identity\"") == 1);
    CHECK(count(svg, "class=\"regression\"") == 1);
    CHECK(svg.find("Parent log-income") != std::string::npos);
    CHECK(svg.find("Child log-income") != std::string::npos);
    CHECK(svg == render_figure(s, ols_fit(s)));

    // The identity line is the plot diagonal.
    const auto id = attributes(element(svg, "identity"), {"x1", "y1", "x2", "y2"});
    CHECK(std::fabs((id[3] - id[1]) / (id[2] - id[0]) + 1.0) < 1e-3);
  }

  TEST_CASE("regression line passes through two collinear markers") {
    const LogIncomeSample s({9.0, 11.0}, {9.5, 12.5});
    const std::string svg = render_figure(s, ols_fit(s));
    const auto line = attributes(element(svg, "regression"), {"x1", "y1", "x2", "y2"});
    for (std::size_t i = 0; i < 2; ++i) {
      const auto c = attributes(element(svg, "marker", i), {"cx", "cy"});
      CHECK(distance_to_line(c[0], c[1], line) <= 0.5);
    }
  }

  TEST_CASE("needs two pairs") {
    const LogIncomeSample s({1.0}, {2.0});
    CHECK_THROWS_AS(render_figure(s, RegressionFit{}), InsufficientData);
  }
}
