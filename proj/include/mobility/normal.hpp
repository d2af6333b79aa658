#pragma once

namespace mobility {

/// Standard normal cumulative distribution function.
///
/// Evaluated through Cody's rational Chebyshev approximations of erfc, so
/// the lower tail keeps full relative precision down to the underflow limit.
/// Absolute error is below 1e-15 over the real line (the published bound is
/// about 1e-18 relative for erfc). Upper-half values are formed as one minus
/// the mirrored tail, which makes Phi(x) + Phi(-x) == 1 up to one rounding.
///
/// Throws NonFiniteInput for NaN or infinite arguments.
double std_normal_cdf(double x);

/// Complementary error function, the kernel behind std_normal_cdf.
double erfc_rational(double x);

}  // namespace mobility
