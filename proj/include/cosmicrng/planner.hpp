#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cosmicrng/catalog.hpp"
#include "cosmicrng/spacetime.hpp"

namespace cosmicrng::planner {

/// Least-squares line of log10(rate) against visual magnitude.
struct TrendFit {
  double slope = 0.0;        // dex per magnitude
  double intercept = 0.0;    // dex, log10 of the rate at magnitude 0
  double residual_sd = 0.0;  // dex
  std::size_t n_points = 0;
};

struct RatePoint {
  double vmag = 0.0;
  double rate_hz = 0.0;
};

/// One photon-counting run of the RNG on a single source.
struct PhotonRun {
  std::string name;
  double vmag = 0.0;
  double distance_ly = 0.0;
  double signal_min_hz = 0.0;
  double signal_max_hz = 0.0;
  double data_gbit = 0.0;
  double background_hz = 0.0;
  double ratio = 0.0;
  double min_entropy = 0.0;

  /// Background-subtracted maximum rate, the quantity the trend is fitted to.
  double true_rate_hz() const { return signal_max_hz - background_hz; }
};

std::vector<PhotonRun> load_photon_runs_string(std::string_view csv);
const std::vector<PhotonRun>& builtin_photon_runs();
std::string_view builtin_photon_runs_csv();

/// Background-subtracted maxima of the stellar runs (the quasar is left out:
/// its signal-to-background ratio is too low for the fit).
std::vector<RatePoint> stellar_trend_points();

/// (1 - exp(-r1 T))(1 - exp(-r2 T)): both RNGs fire in the same window.
double coincidence_probability(double r1_hz, double r2_hz, double t_window_s);

/// Throws Domain on a non-positive rate, Underdetermined below two points or
/// when all magnitudes coincide.
TrendFit fit_magnitude_trend(std::span<const RatePoint> points);

double predict_rate(const TrendFit& fit, double vmag);

/// CSV rows `vmag,log10_rate,fitted` for plotting.
std::string trend_csv(const TrendFit& fit, std::span<const RatePoint> points);

/// Background scales with the field of view for uniform sky brightness.
double scale_background_fov(double background_hz, double fov_from_arcsec2, double fov_to_arcsec2);

/// Signal-to-background ratio; throws Division for zero background.
double snr(double signal_hz, double background_hz);

/// Expected time for n successes at probability p per attempt.
double time_to_n_events(double p_success, double attempt_period_s, double n_events);

inline constexpr double kDefaultPTotal = 2.26e-8;
inline constexpr double kDefaultAttemptPeriod = 24e-6;
inline constexpr double kDefaultLeadTime = 5e-6;

struct FeasibilityInputs {
  catalog::CelestialSource source1;
  catalog::CelestialSource source2;
  spacetime::HorizontalPointing pointing1;
  spacetime::HorizontalPointing pointing2;
  spacetime::TimingBudget budget;
  double lab_sep_m = 5000.0;
  double n_fiber = spacetime::kFiberIndex;
  double p_total = kDefaultPTotal;
  double n_target = 245.0;
  double r1_hz = 324'000.0;
  double r2_hz = 68'000.0;
  double lead_time_s = kDefaultLeadTime;
  double attempt_period_s = kDefaultAttemptPeriod;
};

struct FeasibilityReport {
  double theta_deg = 0.0;
  double l12_ly = 0.0;
  spacetime::TimeConstraint constraint;
  double alpha1_deg = 0.0;
  double alpha2_deg = 0.0;
  double min_lab_separation_m = 0.0;
  double delta_t_min_s = 0.0;
  double p_rng = 0.0;
  double attempt_period_s = 0.0;
  double p_total = 0.0;
  double expected_seconds_per_event = 0.0;
  double hours_to_n_events = 0.0;
  bool locality_ok = false;
  bool foc_ok = false;
};

/// The two Bell-test sources at their pointings of 3 AM, 13 January 2017,
/// with the 8/1/4/1 us budget, 5 km stations, and the published rates.
FeasibilityInputs reference_configuration();

FeasibilityReport feasibility_report(const FeasibilityInputs& in);

std::string feasibility_json(const FeasibilityReport& report);

}  // namespace cosmicrng::planner
