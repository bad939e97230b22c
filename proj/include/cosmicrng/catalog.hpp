#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cosmicrng::catalog {

/// One distance estimate for one source.
///
/// Coordinates, magnitude and sigma are optional because the published
/// distance tables do not carry them for every source and epoch (the 1997
/// column has no uncertainties, and most sources have no coordinates given).
/// Operations that need a missing field raise a validation error.
struct CelestialSource {
  std::string name;
  std::optional<double> ra_deg;
  std::optional<double> dec_deg;
  std::optional<double> vmag;
  double distance_ly = 0.0;
  std::optional<double> sigma_ly;
  int epoch = 0;

  bool operator==(const CelestialSource&) const = default;

  /// Throws Validation if the source has no coordinates.
  double ra() const;
  double dec() const;
  double sigma() const;
};

/// Checks field ranges; throws Error{Validation}.
void validate(const CelestialSource& source);

/// Case-insensitive comparison key with all whitespace removed, so that
/// "HIP15416", "hip 15416" and " HIP  15416 " name the same source.
std::string normalize_name(std::string_view name);

class Catalog {
 public:
  Catalog() = default;

  /// Throws Error{Duplicate} on a repeated (name, epoch) pair and
  /// Error{Validation} on out-of-range fields.
  explicit Catalog(std::vector<CelestialSource> entries);

  std::span<const CelestialSource> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Distinct source names in first-appearance order.
  std::vector<std::string> names() const;

  /// All epochs recorded for a name, in file order.
  std::vector<CelestialSource> history(std::string_view name) const;

  bool operator==(const Catalog&) const = default;

 private:
  std::vector<CelestialSource> entries_;
};

inline constexpr std::string_view kCsvHeader =
    "name,ra_deg,dec_deg,vmag,distance_ly,sigma_ly,epoch";

/// Parses the catalog CSV. `#` lines and blank lines are ignored; rows with a
/// blank distance are skipped. Throws ParseError with the offending line.
Catalog load_catalog(std::istream& in);
Catalog load_catalog_string(std::string_view text);
Catalog load_catalog_file(const std::string& path);

/// Writes the catalog back out in the same CSV layout (shortest round-trip
/// float formatting).
std::string to_csv(const Catalog& catalog);

/// Entry with the greatest epoch for `name`; throws Error{NotFound}.
CelestialSource select_latest(const Catalog& catalog, std::string_view name);

/// Distance table bundled with the library: every source used in the RNG
/// runs, plus the two sources proposed for the Bell test with coordinates.
const Catalog& builtin_catalog();
std::string_view builtin_catalog_csv();

}  // namespace cosmicrng::catalog
