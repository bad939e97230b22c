#include "cosmicrng/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cosmicrng/error.hpp"

namespace cosmicrng::spacetime {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

long double light_seconds(long double ly) { return ly * static_cast<long double>(kJulianYear); }

}  // namespace

void validate(const HorizontalPointing& p) {
  require(p.az_deg >= 0.0 && p.az_deg < 360.0, ErrorKind::Validation, "azimuth outside [0, 360)");
  require(p.alt_deg >= 0.0 && p.alt_deg <= 90.0, ErrorKind::Validation, "altitude outside [0, 90]");
}

void validate(const TimingBudget& b) {
  require(b.t_window_s >= 0.0 && b.t_basis_s >= 0.0 && b.t_measurement_s >= 0.0 && b.t_margin_s >= 0.0,
          ErrorKind::Validation, "timing budget entries must be non-negative");
}

double angular_separation_deg(double ra1_deg, double dec1_deg, double ra2_deg, double dec2_deg) {
  // Vincenty form of the spherical law of cosines: same angle, but stays
  // accurate near 0 and 180 degrees where acos loses digits.
  const double d1 = dec1_deg * kDeg;
  const double d2 = dec2_deg * kDeg;
  const double dra = (ra1_deg - ra2_deg) * kDeg;
  const double cos_theta = std::sin(d1) * std::sin(d2) + std::cos(d1) * std::cos(d2) * std::cos(dra);
  const double a = std::cos(d2) * std::sin(dra);
  const double b = std::cos(d1) * std::sin(d2) - std::sin(d1) * std::cos(d2) * std::cos(dra);
  return std::atan2(std::hypot(a, b), cos_theta) / kDeg;
}

double angular_separation(const catalog::CelestialSource& a, const catalog::CelestialSource& b) {
  return angular_separation_deg(a.ra(), a.dec(), b.ra(), b.dec());
}

double pair_separation(double l1_ly, double l2_ly, double theta_deg) {
  require(l1_ly > 0.0 && l2_ly > 0.0, ErrorKind::Validation, "distances must be positive");
  require(theta_deg >= 0.0 && theta_deg <= 180.0, ErrorKind::Validation, "theta outside [0, 180]");
  const double sq = l1_ly * l1_ly + l2_ly * l2_ly - 2.0 * l1_ly * l2_ly * std::cos(theta_deg * kDeg);
  // Rounding can leave a tiny negative remainder for coincident sources.
  return std::sqrt(std::max(0.0, sq));
}

TimeConstraint time_constraints(double l1, double s1, double l2, double s2, double theta_deg) {
  require(s1 >= 0.0 && s2 >= 0.0, ErrorKind::Validation, "distance uncertainties must be non-negative");
  const double l12 = pair_separation(l1, l2, theta_deg);

  TimeConstraint tc;
  if (l1 <= l2) {
    tc.tau1_yr = l1;
    tc.sigma_tau1_yr = s1;
  } else {
    tc.tau1_yr = l2;
    tc.sigma_tau1_yr = s2;
  }

  tc.tau2_yr = 0.5 * (l1 + l2 + l12);
  if (l12 > 0.0) {
    // First-order propagation through L1 and L2; angle held fixed.
    const double cos_t = std::cos(theta_deg * kDeg);
    const double d1 = tc.tau2_yr - 0.5 * l2 - 0.5 * l2 * cos_t;
    const double d2 = tc.tau2_yr - 0.5 * l1 - 0.5 * l1 * cos_t;
    tc.sigma_tau2_yr = std::hypot(s1 * d1, s2 * d2) / (2.0 * tc.tau2_yr - l1 - l2);
  } else {
    // Coincident sources: tau2 = max(L1, L2), which has a kink here.
    tc.sigma_tau2_yr = l1 > l2 ? s1 : (l2 > l1 ? s2 : std::max(s1, s2));
  }

  if (tc.tau1_yr <= tc.tau2_yr) {
    tc.tau_yr = tc.tau1_yr;
    tc.sigma_tau_yr = tc.sigma_tau1_yr;
  } else {
    tc.tau_yr = tc.tau2_yr;
    tc.sigma_tau_yr = tc.sigma_tau2_yr;
  }
  return tc;
}

TimeConstraint time_constraints(const catalog::CelestialSource& a, const catalog::CelestialSource& b) {
  return time_constraints(a.distance_ly, a.sigma(), b.distance_ly, b.sigma(), angular_separation(a, b));
}

double axis_angle(const HorizontalPointing& p) {
  validate(p);
  const double c = std::abs(std::cos(p.alt_deg * kDeg) * std::cos(p.az_deg * kDeg));
  return std::acos(std::min(1.0, c)) / kDeg;
}

double min_lab_separation(const TimingBudget& budget, double alpha_deg) {
  validate(budget);
  require(alpha_deg >= 0.0, ErrorKind::Validation, "alpha must be non-negative");
  const double cos_a = std::cos(alpha_deg * kDeg);
  require(alpha_deg < 90.0 && cos_a > 0.0, ErrorKind::Geometry,
          "alpha >= 90 degrees: no lab separation satisfies the locality bound");
  return kSpeedOfLight * budget.total() / cos_a;
}

double min_entanglement_lead_time(double l_m1m2_m, double alpha_deg, double n_fiber) {
  require(l_m1m2_m >= 0.0, ErrorKind::Validation, "lab separation must be non-negative");
  require(n_fiber >= 1.0, ErrorKind::Validation, "fiber index must be >= 1");
  return (n_fiber - std::cos(alpha_deg * kDeg)) * l_m1m2_m / (2.0 * kSpeedOfLight);
}

InequalityCheck check_locality(long double l_s1m1_ly, long double l_s1m2_ly, long double l_s2m1_ly,
                               long double l_s2m2_ly, const TimingBudget& budget) {
  validate(budget);
  require(l_s1m1_ly > 0 && l_s1m2_ly > 0 && l_s2m1_ly > 0 && l_s2m2_ly > 0, ErrorKind::Validation,
          "distances must be positive");
  const long double delay = static_cast<long double>(budget.total());
  InequalityCheck out;
  out.slack_a_s = static_cast<double>(light_seconds(l_s1m2_ly - l_s1m1_ly) - delay);
  out.slack_b_s = static_cast<double>(light_seconds(l_s2m1_ly - l_s2m2_ly) - delay);
  out.holds = out.slack_a_s > 0.0 && out.slack_b_s > 0.0;
  return out;
}

InequalityCheck check_freedom_of_choice(long double l_s1m1_ly, long double l_s1b_ly, double l_m1b_m,
                                        long double l_s2m2_ly, long double l_s2b_ly, double l_m2b_m,
                                        double delta_t_s, double n_fiber) {
  require(l_s1m1_ly > 0 && l_s1b_ly > 0 && l_s2m2_ly > 0 && l_s2b_ly > 0, ErrorKind::Validation,
          "source distances must be positive");
  require(l_m1b_m >= 0.0 && l_m2b_m >= 0.0, ErrorKind::Validation, "fiber lengths must be non-negative");
  require(delta_t_s >= 0.0, ErrorKind::Validation, "lead time must be non-negative");
  require(n_fiber >= 1.0, ErrorKind::Validation, "fiber index must be >= 1");

  const long double fiber1 = static_cast<long double>(n_fiber) * l_m1b_m / kSpeedOfLight;
  const long double fiber2 = static_cast<long double>(n_fiber) * l_m2b_m / kSpeedOfLight;
  InequalityCheck out;
  out.slack_a_s = static_cast<double>(light_seconds(l_s1b_ly - l_s1m1_ly) - fiber1 + delta_t_s);
  out.slack_b_s = static_cast<double>(light_seconds(l_s2b_ly - l_s2m2_ly) - fiber2 + delta_t_s);
  out.holds = out.slack_a_s > 0.0 && out.slack_b_s > 0.0;
  return out;
}

}  // namespace cosmicrng::spacetime
