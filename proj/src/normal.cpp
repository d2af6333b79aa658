#include "mobility/normal.hpp"

#include <array>
#include <cmath>

#include "mobility/error.hpp"

namespace mobility {

namespace {

// W. J. Cody, "Rational Chebyshev approximations for the error function",
// Math. Comp. 23 (1969). Coefficients as distributed in netlib specfun/erf.

// erf on |x| <= 0.46875
constexpr std::array<double, 5> kA = {3.16112374387056560e00, 1.13864154151050156e02,
                                      3.77485237685302021e02, 3.20937758913846947e03,
                                      1.85777706184603153e-1};
constexpr std::array<double, 4> kB = {2.36012909523441209e01, 2.44024637934444173e02,
                                      1.28261652607737228e03, 2.84423683343917062e03};

// erfc on 0.46875 < |x| <= 4
constexpr std::array<double, 9> kC = {5.64188496988670089e-1, 8.88314979438837594e00,
                                      6.61191906371416295e01, 2.98635138197400131e02,
                                      8.81952221241769090e02, 1.71204761263407058e03,
                                      2.05107837782607147e03, 1.23033935479799725e03,
                                      2.15311535474403846e-8};
constexpr std::array<double, 8> kD = {1.57449261107098347e01, 1.17693950891312499e02,
                                      5.37181101862009858e02, 1.62138957456669019e03,
                                      3.29079923573345963e03, 4.36261909014324716e03,
                                      3.43936767414372164e03, 1.23033935480374942e03};

// erfc on |x| > 4
constexpr std::array<double, 6> kP = {3.05326634961232344e-1, 3.60344899949804439e-1,
                                      1.25781726111229246e-1, 1.60837851487422766e-2,
                                      6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kQ = {2.56852019228982242e00, 1.87295284992346047e00,
                                      5.27905102951428412e-1, 6.05183413124413191e-2,
                                      2.33520497626869185e-3};

constexpr double kInvSqrtPi = 5.6418958354775628695e-1;
constexpr double kThreshold = 0.46875;
constexpr double kSmall = 1.11e-16;
constexpr double kBig = 26.543;  // erfc underflows beyond this

// exp(-y*y) with y*y split so the product is formed without losing bits.
double exp_neg_square(double y) {
  const double head = std::trunc(y * 16.0) / 16.0;
  const double del = (y - head) * (y + head);
  return std::exp(-head * head) * std::exp(-del);
}

// erfc(y) for y >= 0.
double erfc_nonnegative(double y) {
  if (y <= kThreshold) {
    const double ysq = y > kSmall ? y * y : 0.0;
    double num = kA[4] * ysq;
    double den = ysq;
    for (int i = 0; i < 3; ++i) {
      num = (num + kA[i]) * ysq;
      den = (den + kB[i]) * ysq;
    }
    const double erf = y * (num + kA[3]) / (den + kB[3]);
    return 1.0 - erf;
  }
  if (y <= 4.0) {
    double num = kC[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + kC[i]) * y;
      den = (den + kD[i]) * y;
    }
    return exp_neg_square(y) * (num + kC[7]) / (den + kD[7]);
  }
  if (y >= kBig) return 0.0;
  const double inv_sq = 1.0 / (y * y);
  double num = kP[5] * inv_sq;
  double den = inv_sq;
  for (int i = 0; i < 4; ++i) {
    num = (num + kP[i]) * inv_sq;
    den = (den + kQ[i]) * inv_sq;
  }
  const double ratio = inv_sq * (num + kP[4]) / (den + kQ[4]);
  return exp_neg_square(y) * (kInvSqrtPi - ratio) / y;
}

}  // namespace

double erfc_rational(double x) {
  if (!std::isfinite(x)) throw NonFiniteInput("erfc_rational: argument is not finite");
  return x < 0.0 ? 2.0 - erfc_nonnegative(-x) : erfc_nonnegative(x);
}

double std_normal_cdf(double x) {
  if (!std::isfinite(x)) throw NonFiniteInput("std_normal_cdf: argument is not finite");
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  // Lower tail of the standard normal at -|x|.
  const double tail = 0.5 * erfc_nonnegative(std::fabs(x) * kInvSqrt2);
  return x < 0.0 ? tail : 1.0 - tail;
}

}  // namespace mobility
