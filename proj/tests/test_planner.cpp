#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "cosmicrng/error.hpp"
#include "cosmicrng/planner.hpp"
#include "oracles.hpp"

using namespace cosmicrng;
using namespace cosmicrng::planner;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("photon-run table") {
  const auto& runs = builtin_photon_runs();
  CHECK(runs.size() == 13);
  CHECK(runs.front().name == "HIP15416");
  CHECK(runs.front().signal_max_hz == 2.28e6);
  CHECK(runs.back().vmag == 13.5);
  CHECK(stellar_trend_points().size() == 12);
  CHECK(load_photon_runs_string(builtin_photon_runs_csv()).size() == 13);
  try {
    (void)load_photon_runs_string("name,vmag\nA,1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 1);
  }
}

TEST_CASE("coincidence probability") {
  CHECK(coincidence_probability(324'000, 68'000, 8e-6) == doctest::Approx(0.3881642107321001).epsilon(1e-12));
  CHECK(coincidence_probability(0, 68'000, 8e-6) == 0.0);
  // Small-rate limit: r1 r2 T^2.
  CHECK(coincidence_probability(10, 20, 1e-6) == doctest::Approx(10 * 20 * 1e-12).epsilon(1e-4));
  CHECK(kind_of([] { (void)coincidence_probability(-1, 1, 1); }) == ErrorKind::Validation);
}

TEST_CASE("time to n events") {
  CHECK(time_to_n_events(kDefaultPTotal, 24e-6, 1) == doctest::Approx(1061.9469).epsilon(1e-6));
  CHECK(time_to_n_events(kDefaultPTotal, 24e-6, 245) / 3600.0 == doctest::Approx(72.2714).epsilon(1e-5));
  CHECK(kind_of([] { (void)time_to_n_events(0.0, 24e-6, 1); }) == ErrorKind::Infeasible);
  CHECK(kind_of([] { (void)time_to_n_events(1.5, 24e-6, 1); }) == ErrorKind::Validation);
}

TEST_CASE("background scaling and SNR") {
  CHECK(scale_background_fov(550, 14.7, 0.3) == doctest::Approx(11.2245).epsilon(1e-4));
  CHECK(snr(590, 11.2) == doctest::Approx(52.6786).epsilon(1e-5));
  CHECK(snr(2.28e6, 914) == doctest::Approx(2494.53).epsilon(1e-5));
  CHECK(kind_of([] { (void)snr(1, 0); }) == ErrorKind::Division);
  CHECK(kind_of([] { (void)scale_background_fov(1, 0, 1); }) == ErrorKind::Validation);
}

TEST_CASE("magnitude trend matches independent least squares") {
  const auto pts = stellar_trend_points();
  std::vector<double> x, y;
  for (const auto& p : pts) {
    x.push_back(p.vmag);
    y.push_back(std::log10(p.rate_hz));
  }
  const auto fit = fit_magnitude_trend(pts);
  CHECK(fit.n_points == 12);
  CHECK(fit.slope == doctest::Approx(oracle::pairwise_ols_slope(x, y)).epsilon(1e-12));
  CHECK(fit.slope == doctest::Approx(-0.32655172778026326).epsilon(1e-10));
  CHECK(fit.intercept == doctest::Approx(7.902850230878389).epsilon(1e-10));
  CHECK(fit.residual_sd == doctest::Approx(0.18249).epsilon(1e-4));
  CHECK(predict_rate(fit, 15.3) == doctest::Approx(806.508).epsilon(1e-5));
}

TEST_CASE("trend fit recovers an exact line") {
  std::vector<RatePoint> pts;
  for (double m = 3.0; m <= 11.0; m += 1.0) pts.push_back({m, std::pow(10.0, 7.5 - 0.4 * m)});
  const auto fit = fit_magnitude_trend(pts);
  CHECK(fit.slope == doctest::Approx(-0.4));
  CHECK(fit.intercept == doctest::Approx(7.5));
  CHECK(fit.residual_sd == doctest::Approx(0.0).scale(1.0));
  const auto two = fit_magnitude_trend(std::vector<RatePoint>{{1.0, 100.0}, {2.0, 10.0}});
  CHECK(two.residual_sd == 0.0);
  CHECK(two.slope == doctest::Approx(-1.0));
}

TEST_CASE("trend fit errors") {
  CHECK(kind_of([] { (void)fit_magnitude_trend(std::vector<RatePoint>{{1.0, 1.0}}); }) == ErrorKind::Underdetermined);
  CHECK(kind_of([] { (void)fit_magnitude_trend(std::vector<RatePoint>{{1.0, 1.0}, {1.0, 2.0}}); }) ==
        ErrorKind::Underdetermined);
  CHECK(kind_of([] { (void)fit_magnitude_trend(std::vector<RatePoint>{{1.0, 1.0}, {2.0, 0.0}}); }) ==
        ErrorKind::Domain);
}

TEST_CASE("trend CSV") {
  const auto csv = trend_csv(fit_magnitude_trend(stellar_trend_points()), stellar_trend_points());
  CHECK(csv.rfind("vmag,log10_rate,fitted\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
}

TEST_CASE("feasibility of the reference configuration") {
  const auto r = feasibility_report(reference_configuration());
  CHECK(r.theta_deg == doctest::Approx(131.554).epsilon(1e-5));
  CHECK(r.l12_ly == doctest::Approx(6182.38).epsilon(1e-5));
  CHECK(r.constraint.tau2_yr == doctest::Approx(6480.69).epsilon(1e-5));
  CHECK(r.constraint.sigma_tau2_yr == doctest::Approx(2087.91).epsilon(1e-5));
  CHECK(std::lround(r.alpha1_deg) == 29);
  CHECK(std::lround(r.alpha2_deg) == 25);
  CHECK(r.p_rng == doctest::Approx(0.388164).epsilon(1e-5));
  CHECK(r.expected_seconds_per_event == doctest::Approx(1061.9469).epsilon(1e-6));
  CHECK(r.hours_to_n_events == doctest::Approx(72.2714).epsilon(1e-5));
  CHECK(r.locality_ok);
  CHECK(r.foc_ok);
  // The binding angle is the larger of the two.
  CHECK(r.min_lab_separation_m == doctest::Approx(spacetime::min_lab_separation({8e-6, 1e-6, 4e-6, 1e-6}, r.alpha1_deg)));
}

TEST_CASE("feasibility flags respond to the inputs") {
  auto in = reference_configuration();
  in.lab_sep_m = 3000.0;
  CHECK_FALSE(feasibility_report(in).locality_ok);
  in = reference_configuration();
  in.lead_time_s = 1e-6;
  CHECK_FALSE(feasibility_report(in).foc_ok);
}

TEST_CASE("feasibility JSON layout") {
  const auto j = nlohmann::json::parse(feasibility_json(feasibility_report(reference_configuration())));
  for (auto key : {"theta_deg", "l12_ly", "constraint", "alpha1_deg", "alpha2_deg", "min_lab_separation_m",
                   "delta_t_min_s", "p_rng", "attempt_period_s", "p_total", "expected_seconds_per_event",
                   "hours_to_n_events", "locality_ok", "foc_ok"}) {
    CHECK(j.contains(key));
  }
  CHECK(j.at("constraint").at("tau_yr") == 3325.0);
}
