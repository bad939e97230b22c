#pragma once

namespace cosmicrng::special {

/// Complementary error function.
double erfc(double x);

/// Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Throws Error{Domain} for a <= 0 or x < 0.
double igamc(double a, double x);

/// Standard normal cumulative distribution.
double normal_cdf(double x);

}  // namespace cosmicrng::special
