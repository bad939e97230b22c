#include "cosmicrng/units.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "cosmicrng/error.hpp"
#include "cosmicrng/spacetime.hpp"
#include "text_util.hpp"

namespace cosmicrng::units {

namespace {

struct Unit {
  std::string_view suffix;
  double scale;
};

double parse_with_units(std::string_view text, std::initializer_list<Unit> table, std::string_view what) {
  const auto body = detail::trim(text);
  for (const auto& u : table) {
    if (body.size() > u.suffix.size() && body.ends_with(u.suffix)) {
      const auto number = body.substr(0, body.size() - u.suffix.size());
      // Reject things like "5kms" matching "s" after a bad prefix.
      const char last = detail::trim(number).empty() ? ' ' : detail::trim(number).back();
      if (!(std::isdigit(static_cast<unsigned char>(last)) || last == '.')) continue;
      try {
        return *detail::parse_double(number) * u.scale;
      } catch (const Error&) {
        break;
      }
    }
  }
  try {
    if (const auto v = detail::parse_double(body)) return *v;
  } catch (const Error&) {
  }
  throw Error(ErrorKind::Parse, "cannot parse " + std::string(what) + " '" + std::string(text) + "'");
}

}  // namespace

double parse_duration_s(std::string_view text) {
  return parse_with_units(text,
                          {{"ps", 1e-12}, {"ns", 1e-9}, {"us", 1e-6}, {"\xC2\xB5s", 1e-6}, {"ms", 1e-3}, {"s", 1.0}},
                          "duration");
}

double parse_distance_m(std::string_view text) {
  return parse_with_units(text, {{"km", 1e3}, {"ly", spacetime::kLightYear}, {"m", 1.0}}, "distance");
}

long long parse_duration_ps(std::string_view text) {
  const double s = parse_duration_s(text);
  if (!std::isfinite(s) || std::abs(s) > 9e6) throw Error(ErrorKind::Range, "duration out of range");
  return std::llround(s * 1e12);
}

}  // namespace cosmicrng::units
