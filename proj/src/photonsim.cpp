#include "cosmicrng/photonsim.hpp"

#include <cmath>
#include <random>
#include <string>

#include "cosmicrng/error.hpp"

namespace cosmicrng::photonsim {

namespace {

// Uniform in (0, 1] from the top 53 bits; never zero so log() stays finite.
double unit_open_closed(std::mt19937_64& engine) {
  return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

void validate(const SimConfig& c) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::Validation, what); };
  if (!(c.signal_rate_hz >= 0.0) || !(c.background_rate_hz >= 0.0)) fail("rates must be non-negative");
  if (!std::isfinite(c.total_rate_hz())) fail("rates must be finite");
  if (!(c.duration_s > 0.0) || !std::isfinite(c.duration_s)) fail("duration must be positive");
  if (c.dead_time_ps < 0) fail("dead time must be non-negative");
  if (c.tick_ps <= 0) fail("tick must be positive");
  if (c.duration_s * 1e12 >= 9.0e18) fail("duration exceeds the 64-bit picosecond range");
}

void check_strictly_increasing(const TimestampSeries& series) {
  for (std::size_t i = 1; i < series.times_ps.size(); ++i) {
    if (series.times_ps[i] <= series.times_ps[i - 1]) {
      throw Error(ErrorKind::Ordering, "timestamps not strictly increasing at index " + std::to_string(i));
    }
  }
  if (!series.times_ps.empty() && series.times_ps.front() < 0) {
    throw Error(ErrorKind::Ordering, "negative timestamp");
  }
}

TimestampSeries simulate_arrivals(const SimConfig& config) {
  validate(config);
  const double rate = config.total_rate_hz();
  const double mean = rate * config.duration_s;
  if (mean + 10.0 * std::sqrt(mean) > static_cast<double>(config.max_events)) {
    throw Error(ErrorKind::Capacity, "expected event count " + std::to_string(mean) + " exceeds capacity " +
                                         std::to_string(config.max_events));
  }

  TimestampSeries out;
  out.tick_ps = config.tick_ps;
  out.duration_ps = static_cast<std::int64_t>(std::llround(config.duration_s * 1e12));
  if (rate == 0.0) return out;

  out.times_ps.reserve(static_cast<std::size_t>(mean + 5.0 * std::sqrt(mean) + 16.0));
  std::mt19937_64 engine(config.seed);
  const double mean_gap_ps = 1e12 / rate;
  // A double holds 1e13 ps to ~0.002 ps, far below one tick.
  double t = 0.0;
  while (true) {
    t += -std::log(unit_open_closed(engine)) * mean_gap_ps;
    if (t >= static_cast<double>(out.duration_ps)) break;
    const auto tick = static_cast<std::int64_t>(t / static_cast<double>(config.tick_ps));
    const std::int64_t stamp = tick * config.tick_ps;
    if (!out.times_ps.empty() && out.times_ps.back() == stamp) continue;
    if (out.times_ps.size() >= config.max_events) {
      throw Error(ErrorKind::Capacity, "event count exceeded capacity " + std::to_string(config.max_events));
    }
    out.times_ps.push_back(stamp);
  }
  return out;
}

TimestampSeries simulate_stream(const SimConfig& config) {
  return apply_dead_time(simulate_arrivals(config), config.dead_time_ps);
}

TimestampSeries apply_dead_time(const TimestampSeries& series, std::int64_t dead_time_ps) {
  if (dead_time_ps < 0) throw Error(ErrorKind::Validation, "dead time must be non-negative");
  check_strictly_increasing(series);
  TimestampSeries out;
  out.tick_ps = series.tick_ps;
  out.duration_ps = series.duration_ps;
  out.times_ps.reserve(series.times_ps.size());
  for (const auto t : series.times_ps) {
    if (out.times_ps.empty() || t - out.times_ps.back() >= dead_time_ps) out.times_ps.push_back(t);
  }
  out.times_ps.shrink_to_fit();
  return out;
}

double dead_time_corrected_rate(double rate_hz, double dead_time_s) {
  return rate_hz / (1.0 + rate_hz * dead_time_s);
}

}  // namespace cosmicrng::photonsim
