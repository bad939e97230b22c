#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cosmicrng::photonsim {

/// Name of the pseudo-random engine behind simulate_stream. Written into run
/// manifests so a stream can be regenerated elsewhere.
inline constexpr std::string_view kGeneratorName = "mt19937_64";

struct SimConfig {
  double signal_rate_hz = 0.0;
  double background_rate_hz = 0.0;
  double duration_s = 1.0;
  std::int64_t dead_time_ps = 45'000;
  std::int64_t tick_ps = 25;
  std::uint64_t seed = 0;
  /// Upper bound on generated arrivals; a configuration whose expected count
  /// (plus ten standard deviations) exceeds it is rejected up front.
  std::uint64_t max_events = 500'000'000;

  double total_rate_hz() const { return signal_rate_hz + background_rate_hz; }
};

void validate(const SimConfig& config);

/// Detection record of a TDC: strictly increasing picosecond stamps on the
/// tick grid, all below duration_ps.
struct TimestampSeries {
  std::vector<std::int64_t> times_ps;
  std::int64_t tick_ps = 25;
  std::int64_t duration_ps = 0;

  std::size_t size() const noexcept { return times_ps.size(); }
  bool operator==(const TimestampSeries&) const = default;
};

/// Throws Error{Ordering} if the stamps are not strictly increasing.
void check_strictly_increasing(const TimestampSeries& series);

/// Merged signal+background Poisson arrivals, floored to the tick grid, before
/// any detector dead time. Arrivals landing on an already occupied tick are
/// merged, since the TDC cannot resolve them.
TimestampSeries simulate_arrivals(const SimConfig& config);

/// simulate_arrivals followed by apply_dead_time.
TimestampSeries simulate_stream(const SimConfig& config);

/// Non-paralyzable dead time: keep an event iff it is at least dead_time_ps
/// after the previously kept one.
TimestampSeries apply_dead_time(const TimestampSeries& series, std::int64_t dead_time_ps);

/// Expected post-dead-time rate for a non-paralyzable detector.
double dead_time_corrected_rate(double rate_hz, double dead_time_s);

// Timestamp files. Binary "CPT1": 8-byte magic followed by little-endian
// uint64 tick counts. Text: one decimal picosecond value per line.

inline constexpr char kCpt1Magic[8] = {'C', 'P', 'T', '1', '\0', '\0', '\0', '\0'};

void write_cpt1(std::ostream& out, const TimestampSeries& series);
void write_cpt1_file(const std::string& path, const TimestampSeries& series);

/// duration_ps < 0 means "unknown": it is set one tick past the last stamp.
TimestampSeries read_cpt1(std::istream& in, std::int64_t tick_ps = 25, std::int64_t duration_ps = -1);
TimestampSeries read_cpt1_file(const std::string& path, std::int64_t tick_ps = 25,
                               std::int64_t duration_ps = -1);

void write_text(std::ostream& out, const TimestampSeries& series);
TimestampSeries read_text(std::istream& in, std::int64_t tick_ps = 25, std::int64_t duration_ps = -1);

/// Reads either format, sniffing the magic.
TimestampSeries read_timestamps_file(const std::string& path, std::int64_t tick_ps = 25,
                                     std::int64_t duration_ps = -1);

}  // namespace cosmicrng::photonsim
