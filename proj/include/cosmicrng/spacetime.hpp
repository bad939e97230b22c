#pragma once

#include "cosmicrng/catalog.hpp"

namespace cosmicrng::spacetime {

inline constexpr double kSpeedOfLight = 299'792'458.0;        // m/s
inline constexpr double kJulianYear = 365.25 * 86'400.0;      // s
inline constexpr double kLightYear = kSpeedOfLight * kJulianYear;  // m
inline constexpr double kFiberIndex = 1.45;

/// Telescope pointing in the local horizontal frame.
struct HorizontalPointing {
  double az_deg = 0.0;   // [0, 360)
  double alt_deg = 0.0;  // [0, 90]
};

/// Per-lab delays between a photon detection and the end of the state
/// measurement, all in seconds.
struct TimingBudget {
  double t_window_s = 0.0;
  double t_basis_s = 0.0;
  double t_measurement_s = 0.0;
  double t_margin_s = 0.0;

  double total() const { return t_window_s + t_basis_s + t_measurement_s + t_margin_s; }
};

/// Look-back times (years) before which a hidden-variable mechanism would
/// have had to act. `tau` is the smaller of the two bounds and carries the
/// uncertainty of whichever term attains it.
struct TimeConstraint {
  double tau1_yr = 0.0;
  double sigma_tau1_yr = 0.0;
  double tau2_yr = 0.0;
  double sigma_tau2_yr = 0.0;
  double tau_yr = 0.0;
  double sigma_tau_yr = 0.0;
};

/// Result of a pair of strict light-travel inequalities; slack is right-hand
/// side minus left-hand side in seconds, positive when the inequality holds.
struct InequalityCheck {
  bool holds = false;
  double slack_a_s = 0.0;
  double slack_b_s = 0.0;
};

void validate(const HorizontalPointing& p);
void validate(const TimingBudget& b);

/// Great-circle angle between two sky positions, degrees in [0, 180].
double angular_separation_deg(double ra1_deg, double dec1_deg, double ra2_deg, double dec2_deg);
double angular_separation(const catalog::CelestialSource& a, const catalog::CelestialSource& b);

/// Distance between two sources at distances l1, l2 separated by theta.
double pair_separation(double l1_ly, double l2_ly, double theta_deg);

TimeConstraint time_constraints(const catalog::CelestialSource& a, const catalog::CelestialSource& b);

/// Same, from raw distances and the angle. Years and light-years share the
/// Julian-year convention, so a distance in ly is its light-time in years.
TimeConstraint time_constraints(double l1_ly, double sigma1_ly, double l2_ly, double sigma2_ly,
                                double theta_deg);

/// Angle between the telescope optical axis and a north-south lab axis:
/// arccos(|cos(alt) cos(az)|), degrees in [0, 90].
double axis_angle(const HorizontalPointing& p);

/// Smallest lab separation (m) for which the budget fits inside the light
/// time along the lab axis projected at angle alpha. Uses the far-field
/// approximation L_S1M2 - L_S1M1 ~ L_M1M2 cos(alpha). Throws Geometry for
/// alpha >= 90.
double min_lab_separation(const TimingBudget& budget, double alpha_deg);

/// Minimum time (s) by which the photon-electron entanglement must precede
/// the base choice with the Bell-state lab midway between the stations.
double min_entanglement_lead_time(double l_m1m2_m, double alpha_deg, double n_fiber = kFiberIndex);

/// Locality inequalities with exact source-to-lab distances (light-years).
/// Extended precision is used because lab offsets are ~1e-13 of the
/// source distances.
InequalityCheck check_locality(long double l_s1m1_ly, long double l_s1m2_ly, long double l_s2m1_ly,
                               long double l_s2m2_ly, const TimingBudget& budget);

/// Freedom-of-choice inequalities. Source distances in light-years, fiber
/// runs from each station to the Bell-state lab in meters.
InequalityCheck check_freedom_of_choice(long double l_s1m1_ly, long double l_s1b_ly, double l_m1b_m,
                                        long double l_s2m2_ly, long double l_s2b_ly, double l_m2b_m,
                                        double delta_t_s, double n_fiber = kFiberIndex);

}  // namespace cosmicrng::spacetime
