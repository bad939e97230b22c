#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <vector>

#include "cosmicrng/catalog.hpp"
#include "cosmicrng/error.hpp"
#include "cosmicrng/extract.hpp"
#include "cosmicrng/photonsim.hpp"
#include "cosmicrng/planner.hpp"
#include "cosmicrng/randtest.hpp"
#include "cosmicrng/spacetime.hpp"
#include "cosmicrng/units.hpp"

namespace cosmicrng::cli {

namespace {

using json = nlohmann::ordered_json;

// Everything needed to regenerate a run: the exact argument list plus the
// resolved parameters and digests of what it wrote.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  json parameters = json::object();
  std::vector<std::string> artifacts;
};

json manifest_json(const RunManifest& m) {
  json artifacts = json::array();
  for (const auto& path : m.artifacts) artifacts.push_back({{"path", path}, {"fnv1a64", file_digest(path)}});
  return {
      {"tool", kToolName},
      {"version", kToolVersion},
      {"command", m.command},
      {"argv", m.argv},
      {"parameters", m.parameters},
      {"artifacts", artifacts},
  };
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot create '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

// Shared by every subcommand: where the manifest goes.
struct CommonOptions {
  std::string manifest_path;
};

void emit_manifest(const RunManifest& m, const CommonOptions& common, const std::string& primary_output,
                   std::ostream& err) {
  const auto text = manifest_json(m).dump(2) + "\n";
  std::string path = common.manifest_path;
  if (path.empty() && !primary_output.empty()) path = primary_output + ".manifest.json";
  if (path.empty()) {
    err << "manifest: " << manifest_json(m).dump() << "\n";
    return;
  }
  write_text_file(path, text);
}

// Writes a JSON/CSV result to a file when -o is given, else to stdout.
void emit_result(const std::string& text, const std::string& path, RunManifest& m, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
    m.artifacts.push_back(path);
  }
}

catalog::Catalog open_catalog(const std::string& path) {
  if (path.empty() || path == "built-in") return catalog::builtin_catalog();
  return catalog::load_catalog_file(path);
}

json source_json(const catalog::CelestialSource& s) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(); };
  return {{"name", s.name},          {"ra_deg", opt(s.ra_deg)},       {"dec_deg", opt(s.dec_deg)},
          {"vmag", opt(s.vmag)},     {"distance_ly", s.distance_ly}, {"sigma_ly", opt(s.sigma_ly)},
          {"epoch", s.epoch}};
}

// Flags shared by `feasibility` and `plan`.
struct PlanOptions {
  std::string catalog = "built-in";
  std::string source1 = "HIP 55892";
  std::string source2 = "HIP 117928";
  double az1 = 162.0, alt1 = 23.0, az2 = 352.0, alt2 = 24.0;
  std::string t_window = "8us", t_basis = "1us", t_measurement = "4us", t_margin = "1us";
  std::string lab_sep = "5km";
  double n_fiber = spacetime::kFiberIndex;
  std::string lead_time = "5us";
  std::string attempt_period = "24us";
  double p_total = planner::kDefaultPTotal;
  double n_target = 245.0;
  double r1 = 324'000.0, r2 = 68'000.0;
};

void add_plan_options(CLI::App* cmd, PlanOptions& o) {
  cmd->add_option("--catalog", o.catalog, "Catalog CSV path or 'built-in'")->capture_default_str();
  cmd->add_option("--source1", o.source1, "First RNG source")->capture_default_str();
  cmd->add_option("--source2", o.source2, "Second RNG source")->capture_default_str();
  cmd->add_option("--az1", o.az1, "Telescope 1 azimuth (deg)")->capture_default_str();
  cmd->add_option("--alt1", o.alt1, "Telescope 1 altitude (deg)")->capture_default_str();
  cmd->add_option("--az2", o.az2, "Telescope 2 azimuth (deg)")->capture_default_str();
  cmd->add_option("--alt2", o.alt2, "Telescope 2 altitude (deg)")->capture_default_str();
  cmd->add_option("--t-window", o.t_window, "RNG time window")->capture_default_str();
  cmd->add_option("--t-basis", o.t_basis, "Basis-choice time")->capture_default_str();
  cmd->add_option("--t-measurement", o.t_measurement, "State-measurement time")->capture_default_str();
  cmd->add_option("--t-margin", o.t_margin, "Timing margin")->capture_default_str();
  cmd->add_option("--lab-sep", o.lab_sep, "Distance between the measurement stations")->capture_default_str();
  cmd->add_option("--n-fiber", o.n_fiber, "Fiber refractive index")->capture_default_str();
  cmd->add_option("--lead-time", o.lead_time, "Entanglement lead time before base choice")->capture_default_str();
  cmd->add_option("--attempt-period", o.attempt_period, "Entanglement attempt period")->capture_default_str();
  cmd->add_option("--p-total", o.p_total, "Success probability per attempt")->capture_default_str();
  cmd->add_option("--n-target", o.n_target, "Events needed for the violation")->capture_default_str();
  cmd->add_option("--r1", o.r1, "RNG 1 detection rate (s^-1)")->capture_default_str();
  cmd->add_option("--r2", o.r2, "RNG 2 detection rate (s^-1)")->capture_default_str();
}

planner::FeasibilityInputs plan_inputs(const PlanOptions& o, json& params) {
  const auto cat = open_catalog(o.catalog);
  planner::FeasibilityInputs in;
  in.source1 = catalog::select_latest(cat, o.source1);
  in.source2 = catalog::select_latest(cat, o.source2);
  in.pointing1 = {o.az1, o.alt1};
  in.pointing2 = {o.az2, o.alt2};
  in.budget = {units::parse_duration_s(o.t_window), units::parse_duration_s(o.t_basis),
               units::parse_duration_s(o.t_measurement), units::parse_duration_s(o.t_margin)};
  in.lab_sep_m = units::parse_distance_m(o.lab_sep);
  in.n_fiber = o.n_fiber;
  in.lead_time_s = units::parse_duration_s(o.lead_time);
  in.attempt_period_s = units::parse_duration_s(o.attempt_period);
  in.p_total = o.p_total;
  in.n_target = o.n_target;
  in.r1_hz = o.r1;
  in.r2_hz = o.r2;
  params = {{"catalog", o.catalog},
            {"source1", in.source1.name},
            {"source2", in.source2.name},
            {"pointing1", {in.pointing1.az_deg, in.pointing1.alt_deg}},
            {"pointing2", {in.pointing2.az_deg, in.pointing2.alt_deg}},
            {"budget_s", {in.budget.t_window_s, in.budget.t_basis_s, in.budget.t_measurement_s, in.budget.t_margin_s}},
            {"lab_sep_m", in.lab_sep_m},
            {"n_fiber", in.n_fiber},
            {"lead_time_s", in.lead_time_s},
            {"attempt_period_s", in.attempt_period_s},
            {"p_total", in.p_total},
            {"n_target", in.n_target},
            {"r1_hz", in.r1_hz},
            {"r2_hz", in.r2_hz}};
  return in;
}

int run_rerun(const std::string& manifest_path, bool verify, std::ostream& out, std::ostream& err) {
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorKind::Io, "cannot open manifest '" + manifest_path + "'");
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("manifest: ") + e.what());
  }
  if (!m.contains("argv") || !m["argv"].is_array()) throw Error(ErrorKind::Parse, "manifest has no argv");
  const auto argv = m["argv"].get<std::vector<std::string>>();
  if (!argv.empty() && argv.front() == "rerun") throw Error(ErrorKind::Validation, "manifest records a rerun");

  const int status = dispatch(argv, out, err);
  if (status != kOk || !verify) return status;

  bool identical = true;
  for (const auto& a : m.value("artifacts", json::array())) {
    const auto path = a.at("path").get<std::string>();
    const auto expected = a.at("fnv1a64").get<std::string>();
    if (file_digest(path) != expected) {
      err << "artifact differs: " << path << "\n";
      identical = false;
    }
  }
  return identical ? kOk : kValidationFailure;
}

}  // namespace

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cosmic-photon random number generation and Bell-test planning", std::string(kToolName)};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  CommonOptions common;
  RunManifest manifest;
  manifest.argv.assign(args.begin(), args.end());
  std::function<int()> action;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--manifest", common.manifest_path, "Where to write the run manifest");
  };

  // catalog list|show
  auto* cat_cmd = app.add_subcommand("catalog", "Inspect the source catalog");
  cat_cmd->require_subcommand(1);
  std::string cat_path = "built-in";
  cat_cmd->add_option("--catalog", cat_path, "Catalog CSV path or 'built-in'")->capture_default_str();
  auto* cat_list = cat_cmd->add_subcommand("list", "List sources and their epochs");
  auto* cat_show = cat_cmd->add_subcommand("show", "Show the latest entry and history of one source");
  std::string show_name;
  cat_show->add_option("name", show_name, "Source name")->required();
  for (auto* c : {cat_list, cat_show}) add_common(c);
  cat_list->callback([&] {
    action = [&] {
      const auto cat = open_catalog(cat_path);
      json sources = json::array();
      for (const auto& name : cat.names()) {
        json epochs = json::array();
        for (const auto& e : cat.history(name)) epochs.push_back(e.epoch);
        const auto latest = catalog::select_latest(cat, name);
        sources.push_back({{"name", name}, {"epochs", epochs}, {"latest", source_json(latest)}});
      }
      manifest.command = "catalog list";
      manifest.parameters = {{"catalog", cat_path}};
      out << json{{"sources", sources}}.dump(2) << "\n";
      emit_manifest(manifest, common, "", err);
      return int{kOk};
    };
  });
  cat_show->callback([&] {
    action = [&] {
      const auto cat = open_catalog(cat_path);
      json history = json::array();
      for (const auto& e : cat.history(show_name)) history.push_back(source_json(e));
      const auto latest = catalog::select_latest(cat, show_name);
      manifest.command = "catalog show";
      manifest.parameters = {{"catalog", cat_path}, {"name", show_name}};
      out << json{{"latest", source_json(latest)}, {"history", history}}.dump(2) << "\n";
      emit_manifest(manifest, common, "", err);
      return int{kOk};
    };
  });

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate a detector timestamp stream");
  add_common(sim_cmd);
  double sim_signal = 0.0, sim_background = 0.0;
  std::string sim_duration, sim_dead = "45ns", sim_tick = "25ps", sim_out;
  std::uint64_t sim_seed = 0;
  bool sim_text = false;
  sim_cmd->add_option("--signal-rate", sim_signal, "Signal photon rate (s^-1)")->required();
  sim_cmd->add_option("--background", sim_background, "Background rate (s^-1)")->capture_default_str();
  sim_cmd->add_option("--duration", sim_duration, "Acquisition time, e.g. 10 or 10s")->required();
  sim_cmd->add_option("--seed", sim_seed, "Generator seed")->required();
  sim_cmd->add_option("--dead-time", sim_dead, "Detector recovery time")->capture_default_str();
  sim_cmd->add_option("--tick", sim_tick, "TDC resolution")->capture_default_str();
  sim_cmd->add_option("-o,--output", sim_out, "Timestamp file")->required();
  sim_cmd->add_flag("--text", sim_text, "Write decimal picoseconds instead of CPT1");
  sim_cmd->callback([&] {
    action = [&] {
      photonsim::SimConfig cfg;
      cfg.signal_rate_hz = sim_signal;
      cfg.background_rate_hz = sim_background;
      cfg.duration_s = units::parse_duration_s(sim_duration);
      cfg.dead_time_ps = units::parse_duration_ps(sim_dead);
      cfg.tick_ps = units::parse_duration_ps(sim_tick);
      cfg.seed = sim_seed;
      const auto arrivals = photonsim::simulate_arrivals(cfg);
      const auto series = photonsim::apply_dead_time(arrivals, cfg.dead_time_ps);
      if (sim_text) {
        std::ofstream f(sim_out, std::ios::trunc);
        if (!f) throw Error(ErrorKind::Io, "cannot create '" + sim_out + "'");
        photonsim::write_text(f, series);
      } else {
        photonsim::write_cpt1_file(sim_out, series);
      }
      manifest.command = "simulate";
      manifest.parameters = {{"signal_rate_hz", cfg.signal_rate_hz}, {"background_rate_hz", cfg.background_rate_hz},
                             {"duration_s", cfg.duration_s},         {"dead_time_ps", cfg.dead_time_ps},
                             {"tick_ps", cfg.tick_ps},               {"seed", cfg.seed},
                             {"generator", photonsim::kGeneratorName}, {"format", sim_text ? "text" : "cpt1"}};
      manifest.artifacts.push_back(sim_out);
      out << json{{"arrivals", arrivals.size()},
                  {"detections", series.size()},
                  {"duration_ps", series.duration_ps},
                  {"detection_rate_hz", static_cast<double>(series.size()) / cfg.duration_s},
                  {"expected_detection_rate_hz",
                   photonsim::dead_time_corrected_rate(cfg.total_rate_hz(), static_cast<double>(cfg.dead_time_ps) * 1e-12)},
                  {"generator", photonsim::kGeneratorName}}
                 .dump(2)
          << "\n";
      emit_manifest(manifest, common, sim_out, err);
      return int{kOk};
    };
  });

  // extract
  auto* ext_cmd = app.add_subcommand("extract", "Convert timestamps to 8-bit time-bin codes");
  add_common(ext_cmd);
  std::string ext_in, ext_out, ext_window = "40.96ns", ext_tick = "25ps", ext_duration;
  std::uint32_t ext_bins = 256;
  ext_cmd->add_option("-i,--input", ext_in, "Timestamp file (CPT1 or text)")->required();
  ext_cmd->add_option("-o,--output", ext_out, "Raw byte output")->required();
  ext_cmd->add_option("--window", ext_window, "Clock period")->capture_default_str();
  ext_cmd->add_option("--bins", ext_bins, "Bins per clock period")->capture_default_str();
  ext_cmd->add_option("--tick", ext_tick, "TDC resolution of the input")->capture_default_str();
  ext_cmd->add_option("--duration", ext_duration, "Acquisition time of the input, if known");
  ext_cmd->callback([&] {
    action = [&] {
      extract::ExtractionConfig cfg{units::parse_duration_ps(ext_window), ext_bins};
      const auto duration_ps = ext_duration.empty() ? -1 : units::parse_duration_ps(ext_duration);
      const auto series = photonsim::read_timestamps_file(ext_in, units::parse_duration_ps(ext_tick), duration_ps);
      const auto rec = extract::extract_bits(series, cfg);
      extract::write_bytes_file(ext_out, rec.bytes());
      manifest.command = "extract";
      manifest.parameters = {{"input", ext_in},
                             {"t_window_ps", cfg.t_window_ps},
                             {"n_bins", cfg.n_bins},
                             {"tick_ps", series.tick_ps},
                             {"duration_ps", series.duration_ps}};
      manifest.artifacts.push_back(ext_out);
      out << json{{"codes", rec.codes.size()},
                  {"cycles_observed", rec.n_cycles_observed},
                  {"collisions", rec.n_collisions},
                  {"bin_width_ps", cfg.bin_width_ps()}}
                 .dump(2)
          << "\n";
      emit_manifest(manifest, common, ext_out, err);
      return int{kOk};
    };
  });

  // hist
  auto* hist_cmd = app.add_subcommand("hist", "Per-bin histogram of extracted codes (CSV)");
  add_common(hist_cmd);
  std::string hist_in, hist_out;
  std::uint32_t hist_bins = 256;
  hist_cmd->add_option("-i,--input", hist_in, "Raw byte file")->required();
  hist_cmd->add_option("-o,--output", hist_out, "CSV output (stdout if omitted)");
  hist_cmd->add_option("--bins", hist_bins, "Number of bins")->capture_default_str();
  hist_cmd->callback([&] {
    action = [&] {
      const auto bytes = extract::read_bytes_file(hist_in);
      const auto h = extract::histogram(bytes, hist_bins);
      manifest.command = "hist";
      manifest.parameters = {{"input", hist_in}, {"n_bins", hist_bins}};
      emit_result(extract::histogram_csv(h), hist_out, manifest, out);
      emit_manifest(manifest, common, hist_out, err);
      return int{kOk};
    };
  });

  // entropy
  auto* ent_cmd = app.add_subcommand("entropy", "Per-bit min-entropy of extracted codes");
  add_common(ent_cmd);
  std::string ent_in, ent_out;
  std::uint32_t ent_bins = 256;
  ent_cmd->add_option("-i,--input", ent_in, "Raw byte file")->required();
  ent_cmd->add_option("-o,--output", ent_out, "JSON output (stdout if omitted)");
  ent_cmd->add_option("--bins", ent_bins, "Number of bins")->capture_default_str();
  ent_cmd->callback([&] {
    action = [&] {
      const auto bytes = extract::read_bytes_file(ent_in);
      const auto h = extract::histogram(bytes, ent_bins);
      const double h_min = extract::min_entropy(h);
      const auto max_count = *std::max_element(h.counts.begin(), h.counts.end());
      manifest.command = "entropy";
      manifest.parameters = {{"input", ent_in}, {"n_bins", ent_bins}};
      const json result = {{"samples", h.total},
                           {"max_probability", static_cast<double>(max_count) / static_cast<double>(h.total)},
                           {"min_entropy_per_bit", h_min}};
      emit_result(result.dump(2) + "\n", ent_out, manifest, out);
      emit_manifest(manifest, common, ent_out, err);
      return int{kOk};
    };
  });

  // analyze
  auto* an_cmd = app.add_subcommand("analyze", "Run the statistical test battery on raw bytes");
  add_common(an_cmd);
  std::string an_bits, an_out;
  std::size_t an_sequences = 100, an_len = 100'000;
  std::optional<std::size_t> an_block;
  std::optional<unsigned> an_serial, an_apen;
  unsigned an_threads = 0;
  an_cmd->add_option("--bits", an_bits, "Raw byte file, unpacked MSB first")->required();
  an_cmd->add_option("--sequences", an_sequences, "Number of sequences")->capture_default_str();
  an_cmd->add_option("--seq-len", an_len, "Bits per sequence")->capture_default_str();
  an_cmd->add_option("--block-m", an_block, "BlockFrequency block length");
  an_cmd->add_option("--serial-m", an_serial, "Serial pattern length");
  an_cmd->add_option("--apen-m", an_apen, "ApproximateEntropy pattern length");
  an_cmd->add_option("--threads", an_threads, "Worker threads (0 = all cores)");
  an_cmd->add_option("-o,--output", an_out, "JSON report (stdout if omitted)");
  an_cmd->callback([&] {
    action = [&] {
      const auto bytes = extract::read_bytes_file(an_bits);
      const auto bits = extract::unpack_bits_msb_first(bytes);
      const auto sequences = randtest::split_sequences(bits, an_sequences, an_len);
      auto params = randtest::default_battery_params(an_len);
      if (an_block) params.m_block = *an_block;
      if (an_serial) params.m_serial = *an_serial;
      if (an_apen) params.m_apen = *an_apen;
      params.threads = an_threads;
      const auto report = randtest::run_battery(sequences, params);
      for (const auto& w : report.warnings) err << "warning: " << w << "\n";
      manifest.command = "analyze";
      manifest.parameters = {{"bits", an_bits},          {"sequences", an_sequences},
                             {"seq_len", an_len},         {"m_block", params.m_block},
                             {"m_serial", params.m_serial}, {"m_apen", params.m_apen}};
      emit_result(randtest::battery_json(report), an_out, manifest, out);
      emit_manifest(manifest, common, an_out, err);
      return report.pass ? int{kOk} : int{kValidationFailure};
    };
  });

  // fit-trend
  auto* fit_cmd = app.add_subcommand("fit-trend", "Fit log10(rate) against magnitude");
  add_common(fit_cmd);
  std::string fit_in, fit_csv, fit_out;
  std::vector<double> fit_predict;
  fit_cmd->add_option("--points", fit_in, "CSV of vmag,rate_hz (default: built-in stellar runs)");
  fit_cmd->add_option("--csv", fit_csv, "Write vmag,log10_rate,fitted rows here");
  fit_cmd->add_option("--predict", fit_predict, "Magnitudes to predict rates for");
  fit_cmd->add_option("-o,--output", fit_out, "JSON output (stdout if omitted)");
  fit_cmd->callback([&] {
    action = [&] {
      std::vector<planner::RatePoint> points;
      if (fit_in.empty()) {
        points = planner::stellar_trend_points();
      } else {
        std::ifstream f(fit_in);
        if (!f) throw Error(ErrorKind::Io, "cannot open '" + fit_in + "'");
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(f, line)) {
          ++line_no;
          if (line.empty() || line[0] == '#' || line.rfind("vmag", 0) == 0) continue;
          double vmag = 0.0, rate = 0.0;
          char comma = 0;
          std::istringstream row(line);
          if (!(row >> vmag >> comma >> rate) || comma != ',') throw ParseError(line_no, "expected vmag,rate_hz");
          points.push_back({vmag, rate});
        }
      }
      const auto fit = planner::fit_magnitude_trend(points);
      json predictions = json::array();
      for (const double v : fit_predict) predictions.push_back({{"vmag", v}, {"rate_hz", planner::predict_rate(fit, v)}});
      manifest.command = "fit-trend";
      manifest.parameters = {{"points", fit_in.empty() ? "built-in" : fit_in}, {"predict", fit_predict}};
      if (!fit_csv.empty()) {
        write_text_file(fit_csv, planner::trend_csv(fit, points));
        manifest.artifacts.push_back(fit_csv);
      }
      const json result = {{"slope", fit.slope},
                           {"intercept", fit.intercept},
                           {"residual_sd", fit.residual_sd},
                           {"n_points", fit.n_points},
                           {"predictions", predictions}};
      emit_result(result.dump(2) + "\n", fit_out, manifest, out);
      emit_manifest(manifest, common, fit_out.empty() ? fit_csv : fit_out, err);
      return int{kOk};
    };
  });

  // feasibility / plan
  PlanOptions plan_opts;
  std::string plan_out;
  auto* feas_cmd = app.add_subcommand("feasibility", "Space-time checks for a two-source Bell test");
  auto* plan_cmd = app.add_subcommand("plan", "Full feasibility report including event-rate estimates");
  for (auto* c : {feas_cmd, plan_cmd}) {
    add_common(c);
    add_plan_options(c, plan_opts);
    c->add_option("-o,--output", plan_out, "JSON output (stdout if omitted)");
  }
  auto run_plan = [&](bool full) {
    json params;
    const auto inputs = plan_inputs(plan_opts, params);
    const auto r = planner::feasibility_report(inputs);
    manifest.command = full ? "plan" : "feasibility";
    manifest.parameters = params;
    std::string text;
    if (full) {
      text = planner::feasibility_json(r);
      if (inputs.p_total == planner::kDefaultPTotal) {
        err << "note: p_total defaults to 2.26e-8 per attempt; a value of 2.26e-9 would scale every "
               "duration by ten\n";
      }
    } else {
      const auto& c = r.constraint;
      text = json{{"theta_deg", r.theta_deg},
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
                  {"locality_ok", r.locality_ok},
                  {"foc_ok", r.foc_ok}}
                 .dump(2) +
             "\n";
    }
    emit_result(text, plan_out, manifest, out);
    emit_manifest(manifest, common, plan_out, err);
    return r.locality_ok && r.foc_ok ? int{kOk} : int{kValidationFailure};
  };
  feas_cmd->callback([&] { action = [&] { return run_plan(false); }; });
  plan_cmd->callback([&] { action = [&] { return run_plan(true); }; });

  // rerun
  auto* rerun_cmd = app.add_subcommand("rerun", "Repeat a run from its manifest");
  std::string rerun_manifest;
  bool rerun_verify = false;
  rerun_cmd->add_option("manifest", rerun_manifest, "Manifest JSON")->required();
  rerun_cmd->add_flag("--verify", rerun_verify, "Fail unless every artifact is byte-identical");
  rerun_cmd->callback([&] { action = [&] { return run_rerun(rerun_manifest, rerun_verify, out, err); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kUsageError;
  }

  if (!action) {
    err << app.help();
    return kUsageError;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
}

}  // namespace cosmicrng::cli
