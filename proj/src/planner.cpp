#include "cosmicrng/planner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cosmicrng/error.hpp"
#include "text_util.hpp"

namespace cosmicrng::planner {

std::vector<PhotonRun> load_photon_runs_string(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::vector<PhotonRun> runs;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto f = detail::split_csv(body);
    if (f.size() != 9) throw ParseError(line_no, "expected 9 fields");
    try {
      runs.push_back({f[0], *detail::parse_double(f[1]), *detail::parse_double(f[2]), *detail::parse_double(f[3]),
                      *detail::parse_double(f[4]), *detail::parse_double(f[5]), *detail::parse_double(f[6]),
                      *detail::parse_double(f[7]), *detail::parse_double(f[8])});
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return runs;
}

std::vector<RatePoint> stellar_trend_points() {
  std::vector<RatePoint> pts;
  for (const auto& r : builtin_photon_runs()) {
    if (r.vmag >= 11.0) continue;
    pts.push_back({r.vmag, r.true_rate_hz()});
  }
  return pts;
}

double coincidence_probability(double r1_hz, double r2_hz, double t_window_s) {
  if (!(r1_hz >= 0.0) || !(r2_hz >= 0.0)) throw Error(ErrorKind::Validation, "rates must be non-negative");
  if (!(t_window_s > 0.0)) throw Error(ErrorKind::Validation, "window must be positive");
  return -std::expm1(-r1_hz * t_window_s) * -std::expm1(-r2_hz * t_window_s);
}

TrendFit fit_magnitude_trend(std::span<const RatePoint> points) {
  if (points.size() < 2) throw Error(ErrorKind::Underdetermined, "trend fit needs at least two points");
  for (const auto& p : points) {
    if (!(p.rate_hz > 0.0)) throw Error(ErrorKind::Domain, "trend fit needs positive rates");
  }
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : points) {
    mx += p.vmag;
    my += std::log10(p.rate_hz);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = p.vmag - mx;
    sxx += dx * dx;
    sxy += dx * (std::log10(p.rate_hz) - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::Underdetermined, "trend fit needs at least two distinct magnitudes");

  TrendFit fit;
  fit.n_points = points.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (const auto& p : points) {
    const double r = std::log10(p.rate_hz) - (fit.intercept + fit.slope * p.vmag);
    ss += r * r;
  }
  // Two fitted parameters; a two-point fit is exact.
  fit.residual_sd = points.size() > 2 ? std::sqrt(ss / (n - 2.0)) : 0.0;
  return fit;
}

double predict_rate(const TrendFit& fit, double vmag) { return std::pow(10.0, fit.intercept + fit.slope * vmag); }

std::string trend_csv(const TrendFit& fit, std::span<const RatePoint> points) {
  std::string out = "vmag,log10_rate,fitted\n";
  for (const auto& p : points) {
    out += detail::format_double(p.vmag) + ',' + detail::format_double(std::log10(p.rate_hz)) + ',' +
           detail::format_double(fit.intercept + fit.slope * p.vmag) + '\n';
  }
  return out;
}

double scale_background_fov(double background_hz, double fov_from_arcsec2, double fov_to_arcsec2) {
  if (!(background_hz > 0.0) || !(fov_from_arcsec2 > 0.0) || !(fov_to_arcsec2 > 0.0)) {
    throw Error(ErrorKind::Validation, "background and fields of view must be positive");
  }
  return background_hz * (fov_to_arcsec2 / fov_from_arcsec2);
}

double snr(double signal_hz, double background_hz) {
  if (!(signal_hz >= 0.0)) throw Error(ErrorKind::Validation, "signal must be non-negative");
  if (background_hz == 0.0) throw Error(ErrorKind::Division, "zero background: signal-to-noise ratio is unbounded");
  if (!(background_hz > 0.0)) throw Error(ErrorKind::Validation, "background must be positive");
  return signal_hz / background_hz;
}

double time_to_n_events(double p_success, double attempt_period_s, double n_events) {
  if (p_success == 0.0) throw Error(ErrorKind::Infeasible, "zero success probability: no events will occur");
  if (!(p_success > 0.0 && p_success <= 1.0)) throw Error(ErrorKind::Validation, "success probability outside (0, 1]");
  if (!(attempt_period_s > 0.0)) throw Error(ErrorKind::Validation, "attempt period must be positive");
  if (!(n_events >= 1.0)) throw Error(ErrorKind::Validation, "event count must be at least 1");
  return n_events * attempt_period_s / p_success;
}

FeasibilityInputs reference_configuration() {
  const auto& cat = catalog::builtin_catalog();
  FeasibilityInputs in;
  in.source1 = catalog::select_latest(cat, "HIP 55892");
  in.source2 = catalog::select_latest(cat, "HIP 117928");
  in.pointing1 = {162.0, 23.0};
  in.pointing2 = {352.0, 24.0};
  in.budget = {8e-6, 1e-6, 4e-6, 1e-6};
  return in;
}

FeasibilityReport feasibility_report(const FeasibilityInputs& in) {
  FeasibilityReport r;
  r.theta_deg = spacetime::angular_separation(in.source1, in.source2);
  r.l12_ly = spacetime::pair_separation(in.source1.distance_ly, in.source2.distance_ly, r.theta_deg);
  r.constraint = spacetime::time_constraints(in.source1, in.source2);
  r.alpha1_deg = spacetime::axis_angle(in.pointing1);
  r.alpha2_deg = spacetime::axis_angle(in.pointing2);
  const double alpha = std::max(r.alpha1_deg, r.alpha2_deg);
  r.min_lab_separation_m = spacetime::min_lab_separation(in.budget, alpha);
  r.delta_t_min_s = spacetime::min_entanglement_lead_time(in.lab_sep_m, alpha, in.n_fiber);
  r.p_rng = coincidence_probability(in.r1_hz, in.r2_hz, in.budget.t_window_s);
  r.attempt_period_s = in.attempt_period_s;
  r.p_total = in.p_total;
  r.expected_seconds_per_event = time_to_n_events(in.p_total, in.attempt_period_s, 1.0);
  r.hours_to_n_events = time_to_n_events(in.p_total, in.attempt_period_s, in.n_target) / 3600.0;
  r.locality_ok = in.lab_sep_m > r.min_lab_separation_m;
  r.foc_ok = in.lead_time_s >= r.delta_t_min_s;
  return r;
}

std::string feasibility_json(const FeasibilityReport& r) {
  const auto& c = r.constraint;
  nlohmann::ordered_json j = {
      {"theta_deg", r.theta_deg},
      {"l12_ly", r.l12_ly},
      {"constraint",
       {{"tau1_yr", c.tau1_yr},
        {"sigma_tau1_yr", c.sigma_tau1_yr},
        {"tau2_yr", c.tau2_yr},
        {"sigma_tau2_yr", c.sigma_tau2_yr},
        {"tau_yr", c.tau_yr},
        {"sigma_tau_yr", c.sigma_tau_yr}}},
      {"alpha1_deg", r.alpha1_deg},
      {"alpha2_deg", r.alpha2_deg},
      {"min_lab_separation_m", r.min_lab_separation_m},
      {"delta_t_min_s", r.delta_t_min_s},
      {"p_rng", r.p_rng},
      {"attempt_period_s", r.attempt_period_s},
      {"p_total", r.p_total},
      {"expected_seconds_per_event", r.expected_seconds_per_event},
      {"hours_to_n_events", r.hours_to_n_events},
      {"locality_ok", r.locality_ok},
      {"foc_ok", r.foc_ok},
  };
  return j.dump(2) + "\n";
}

}  // namespace cosmicrng::planner
