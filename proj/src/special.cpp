#include "cosmicrng/special.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "cosmicrng/error.hpp"

namespace cosmicrng::special {

double erfc(double x) { return std::erfc(x); }

double igamc(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorKind::Domain, "igamc requires a > 0");
  if (!(x >= 0.0)) throw Error(ErrorKind::Domain, "igamc requires x >= 0");
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(a, x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace cosmicrng::special
