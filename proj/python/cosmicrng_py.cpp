#include <algorithm>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cosmicrng/catalog.hpp"
#include "cosmicrng/error.hpp"
#include "cosmicrng/extract.hpp"
#include "cosmicrng/photonsim.hpp"
#include "cosmicrng/planner.hpp"
#include "cosmicrng/randtest.hpp"
#include "cosmicrng/spacetime.hpp"
#include "cosmicrng/special.hpp"

namespace py = pybind11;
using namespace cosmicrng;

namespace {

py::dict source_dict(const catalog::CelestialSource& s) {
  py::dict d;
  d["name"] = s.name;
  d["ra_deg"] = s.ra_deg;
  d["dec_deg"] = s.dec_deg;
  d["vmag"] = s.vmag;
  d["distance_ly"] = s.distance_ly;
  d["sigma_ly"] = s.sigma_ly;
  d["epoch"] = s.epoch;
  return d;
}

py::array_t<std::int64_t> to_array(const std::vector<std::int64_t>& v) {
  py::array_t<std::int64_t> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<std::uint8_t> bytes_of(const py::bytes& b) {
  const std::string_view view(b);
  return {view.begin(), view.end()};
}

randtest::BitSequence sequence_of(const py::object& bits) {
  if (py::isinstance<py::str>(bits)) return randtest::BitSequence::from_string(bits.cast<std::string>());
  return randtest::BitSequence(bits.cast<std::vector<std::uint8_t>>());
}

}  // namespace

PYBIND11_MODULE(_cosmicrng, m) {
  m.doc() = "Cosmic-photon random numbers, randomness tests and Bell-test planning";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  // catalog
  m.def("builtin_catalog", [] {
    py::list out;
    for (const auto& s : catalog::builtin_catalog().entries()) out.append(source_dict(s));
    return out;
  });
  m.def("select_latest", [](const std::string& name) {
    return source_dict(catalog::select_latest(catalog::builtin_catalog(), name));
  });

  // spacetime
  m.def("angular_separation", &spacetime::angular_separation_deg, py::arg("ra1_deg"), py::arg("dec1_deg"),
        py::arg("ra2_deg"), py::arg("dec2_deg"));
  m.def("pair_separation", &spacetime::pair_separation, py::arg("l1_ly"), py::arg("l2_ly"), py::arg("theta_deg"));
  m.def(
      "time_constraints",
      [](double l1, double s1, double l2, double s2, double theta) {
        const auto tc = spacetime::time_constraints(l1, s1, l2, s2, theta);
        py::dict d;
        d["tau1_yr"] = tc.tau1_yr;
        d["sigma_tau1_yr"] = tc.sigma_tau1_yr;
        d["tau2_yr"] = tc.tau2_yr;
        d["sigma_tau2_yr"] = tc.sigma_tau2_yr;
        d["tau_yr"] = tc.tau_yr;
        d["sigma_tau_yr"] = tc.sigma_tau_yr;
        return d;
      },
      py::arg("l1_ly"), py::arg("sigma1_ly"), py::arg("l2_ly"), py::arg("sigma2_ly"), py::arg("theta_deg"));
  m.def(
      "axis_angle", [](double az, double alt) { return spacetime::axis_angle({az, alt}); }, py::arg("az_deg"),
      py::arg("alt_deg"));
  m.def(
      "min_lab_separation",
      [](double window, double basis, double measurement, double margin, double alpha) {
        return spacetime::min_lab_separation({window, basis, measurement, margin}, alpha);
      },
      py::arg("t_window_s"), py::arg("t_basis_s"), py::arg("t_measurement_s"), py::arg("t_margin_s"),
      py::arg("alpha_deg"));
  m.def("min_entanglement_lead_time", &spacetime::min_entanglement_lead_time, py::arg("l_m1m2_m"),
        py::arg("alpha_deg"), py::arg("n_fiber") = spacetime::kFiberIndex);

  // photon stream and extraction
  m.def(
      "simulate_stream",
      [](double signal, double background, double duration, std::uint64_t seed, std::int64_t dead_time_ps,
         std::int64_t tick_ps) {
        photonsim::SimConfig c;
        c.signal_rate_hz = signal;
        c.background_rate_hz = background;
        c.duration_s = duration;
        c.seed = seed;
        c.dead_time_ps = dead_time_ps;
        c.tick_ps = tick_ps;
        photonsim::TimestampSeries s;
        {
          py::gil_scoped_release release;
          s = photonsim::simulate_stream(c);
        }
        return to_array(s.times_ps);
      },
      py::arg("signal_rate_hz"), py::arg("background_rate_hz") = 0.0, py::arg("duration_s") = 1.0,
      py::arg("seed") = 0, py::arg("dead_time_ps") = 45'000, py::arg("tick_ps") = 25);
  m.def(
      "extract_bits",
      [](py::array_t<std::int64_t, py::array::c_style | py::array::forcecast> times, std::int64_t duration_ps,
         std::int64_t window_ps, std::uint32_t n_bins) {
        photonsim::TimestampSeries s;
        s.times_ps.assign(times.data(), times.data() + times.size());
        s.tick_ps = 1;
        s.duration_ps = duration_ps >= 0 ? duration_ps : (s.times_ps.empty() ? 0 : s.times_ps.back() + 1);
        const auto rec = extract::extract_bits(s, {window_ps, n_bins});
        py::dict d;
        d["codes"] = py::bytes(reinterpret_cast<const char*>(rec.codes.data()), rec.codes.size());
        d["n_cycles_observed"] = rec.n_cycles_observed;
        d["n_collisions"] = rec.n_collisions;
        return d;
      },
      py::arg("times_ps"), py::arg("duration_ps") = -1, py::arg("t_window_ps") = 40'960, py::arg("n_bins") = 256);
  m.def(
      "histogram",
      [](const py::bytes& codes, std::uint32_t n_bins) { return extract::histogram(bytes_of(codes), n_bins).counts; },
      py::arg("codes"), py::arg("n_bins") = 256);
  m.def(
      "min_entropy",
      [](const py::bytes& codes, std::uint32_t n_bins) {
        return extract::min_entropy(extract::histogram(bytes_of(codes), n_bins));
      },
      py::arg("codes"), py::arg("n_bins") = 256);

  // special functions and randomness tests
  m.def("igamc", &special::igamc, py::arg("a"), py::arg("x"));
  m.def("erfc", &special::erfc, py::arg("x"));
  m.def("frequency_test", [](const py::object& b) { return randtest::frequency_test(sequence_of(b)).p_values[0]; });
  m.def(
      "block_frequency_test",
      [](const py::object& b, std::size_t m_block) {
        return randtest::block_frequency_test(sequence_of(b), m_block).p_values[0];
      },
      py::arg("bits"), py::arg("m_block"));
  m.def("runs_test", [](const py::object& b) { return randtest::runs_test(sequence_of(b)).p_values[0]; });
  m.def("longest_run_test", [](const py::object& b) { return randtest::longest_run_test(sequence_of(b)).p_values[0]; });
  m.def("cumulative_sums_test", [](const py::object& b) { return randtest::cumulative_sums_test(sequence_of(b)).p_values; });
  m.def("spectral_dft_test", [](const py::object& b) { return randtest::spectral_dft_test(sequence_of(b)).p_values[0]; });
  m.def(
      "serial_test", [](const py::object& b, unsigned m_len) { return randtest::serial_test(sequence_of(b), m_len).p_values; },
      py::arg("bits"), py::arg("m"));
  m.def(
      "approximate_entropy_test",
      [](const py::object& b, unsigned m_len) {
        return randtest::approximate_entropy_test(sequence_of(b), m_len).p_values[0];
      },
      py::arg("bits"), py::arg("m"));
  m.def(
      "run_battery",
      [](const py::bytes& data, std::size_t sequences, std::size_t length, unsigned threads) {
        const auto bits = extract::unpack_bits_msb_first(bytes_of(data));
        const auto seqs = randtest::split_sequences(bits, sequences, length);
        auto params = randtest::default_battery_params(length);
        params.threads = threads;
        randtest::BatteryReport r;
        {
          py::gil_scoped_release release;
          r = randtest::run_battery(seqs, params);
        }
        return randtest::battery_json(r);
      },
      py::arg("data"), py::arg("sequences"), py::arg("seq_len"), py::arg("threads") = 0,
      "Run the battery on MSB-first bits of `data`; returns the JSON report.");

  // planning
  m.def("coincidence_probability", &planner::coincidence_probability, py::arg("r1_hz"), py::arg("r2_hz"),
        py::arg("t_window_s"));
  m.def("time_to_n_events", &planner::time_to_n_events, py::arg("p_success"), py::arg("attempt_period_s"),
        py::arg("n_events"));
  m.def("scale_background_fov", &planner::scale_background_fov, py::arg("background_hz"),
        py::arg("fov_from_arcsec2"), py::arg("fov_to_arcsec2"));
  m.def("snr", &planner::snr, py::arg("signal_hz"), py::arg("background_hz"));
  m.def("fit_magnitude_trend", [](const std::vector<std::pair<double, double>>& points) {
    std::vector<planner::RatePoint> pts;
    for (const auto& [v, r] : points) pts.push_back({v, r});
    const auto fit = pts.empty() ? planner::fit_magnitude_trend(planner::stellar_trend_points())
                                 : planner::fit_magnitude_trend(pts);
    py::dict d;
    d["slope"] = fit.slope;
    d["intercept"] = fit.intercept;
    d["residual_sd"] = fit.residual_sd;
    d["n_points"] = fit.n_points;
    return d;
  }, py::arg("points") = std::vector<std::pair<double, double>>{},
     "Fit log10(rate) against magnitude; the built-in stellar runs when `points` is empty.");
  m.def(
      "predict_rate",
      [](double slope, double intercept, double vmag) { return planner::predict_rate({slope, intercept, 0.0, 0}, vmag); },
      py::arg("slope"), py::arg("intercept"), py::arg("vmag"));
  m.def("reference_feasibility", [] {
    return planner::feasibility_json(planner::feasibility_report(planner::reference_configuration()));
  });
}
