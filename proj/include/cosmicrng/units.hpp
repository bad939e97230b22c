#pragma once

#include <string_view>

namespace cosmicrng::units {

/// "8us", "40.96ns", "1.5 ms", "25ps", "10s" or a bare number of seconds.
/// `u` and the micro sign are accepted for micro. Throws Error{Parse}.
double parse_duration_s(std::string_view text);

/// "5km", "5000m", "3325ly" or a bare number of meters.
double parse_distance_m(std::string_view text);

/// Duration rounded to whole picoseconds.
long long parse_duration_ps(std::string_view text);

}  // namespace cosmicrng::units
