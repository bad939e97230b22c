#include "cosmicrng/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "cosmicrng/error.hpp"
#include "text_util.hpp"

namespace cosmicrng::catalog {

namespace {

double require(const std::optional<double>& v, const CelestialSource& s, const char* field) {
  if (!v) {
    throw Error(ErrorKind::Validation, "source '" + s.name + "' (epoch " +
                                           std::to_string(s.epoch) + ") has no " + field);
  }
  return *v;
}

}  // namespace

double CelestialSource::ra() const { return require(ra_deg, *this, "right ascension"); }
double CelestialSource::dec() const { return require(dec_deg, *this, "declination"); }
double CelestialSource::sigma() const { return require(sigma_ly, *this, "distance uncertainty"); }

void validate(const CelestialSource& s) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Validation, "source '" + s.name + "': " + what);
  };
  if (normalize_name(s.name).empty()) fail("empty name");
  if (s.ra_deg.has_value() != s.dec_deg.has_value()) fail("right ascension and declination must both be given");
  if (s.ra_deg && !(*s.ra_deg >= 0.0 && *s.ra_deg < 360.0)) fail("ra_deg outside [0, 360)");
  if (s.dec_deg && !(*s.dec_deg >= -90.0 && *s.dec_deg <= 90.0)) fail("dec_deg outside [-90, 90]");
  if (!(s.distance_ly > 0.0) || !std::isfinite(s.distance_ly)) fail("distance_ly must be positive");
  if (s.sigma_ly && !(*s.sigma_ly >= 0.0)) fail("sigma_ly must be non-negative");
  if (s.epoch <= 0) fail("epoch must be a positive year");
}

std::string normalize_name(std::string_view name) {
  std::string key;
  key.reserve(name.size());
  for (unsigned char c : name) {
    if (!std::isspace(c)) key += static_cast<char>(std::tolower(c));
  }
  return key;
}

Catalog::Catalog(std::vector<CelestialSource> entries) : entries_(std::move(entries)) {
  std::set<std::pair<std::string, int>> seen;
  for (const auto& e : entries_) {
    validate(e);
    if (!seen.emplace(normalize_name(e.name), e.epoch).second) {
      throw Error(ErrorKind::Duplicate,
                  "duplicate entry for '" + e.name + "' epoch " + std::to_string(e.epoch));
    }
  }
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& e : entries_) {
    if (seen.insert(normalize_name(e.name)).second) out.push_back(e.name);
  }
  return out;
}

std::vector<CelestialSource> Catalog::history(std::string_view name) const {
  const auto key = normalize_name(name);
  std::vector<CelestialSource> out;
  for (const auto& e : entries_) {
    if (normalize_name(e.name) == key) out.push_back(e);
  }
  return out;
}

Catalog load_catalog(std::istream& in) {
  std::vector<CelestialSource> rows;
  std::set<std::pair<std::string, int>> seen;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (!have_header) {
      std::string header;
      for (const auto& f : detail::split_csv(body)) header += (header.empty() ? "" : ",") + f;
      if (header != kCsvHeader) {
        throw ParseError(line_no, "expected header '" + std::string(kCsvHeader) + "'");
      }
      have_header = true;
      continue;
    }

    const auto fields = detail::split_csv(body);
    if (fields.size() != 7) {
      throw ParseError(line_no, "expected 7 fields, found " + std::to_string(fields.size()));
    }

    CelestialSource s;
    std::optional<double> distance;
    std::optional<long long> epoch;
    try {
      s.name = fields[0];
      s.ra_deg = detail::parse_double(fields[1]);
      s.dec_deg = detail::parse_double(fields[2]);
      s.vmag = detail::parse_double(fields[3]);
      distance = detail::parse_double(fields[4]);
      s.sigma_ly = detail::parse_double(fields[5]);
      epoch = detail::parse_integer(fields[6]);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    if (!epoch) throw ParseError(line_no, "missing epoch");
    if (*epoch <= 0 || *epoch > 100000) throw ParseError(line_no, "epoch out of range");
    s.epoch = static_cast<int>(*epoch);
    if (!distance) continue;  // blank cell in the source table
    s.distance_ly = *distance;

    try {
      validate(s);
    } catch (const Error& e) {
      throw Error(ErrorKind::Validation, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.emplace(normalize_name(s.name), s.epoch).second) {
      throw Error(ErrorKind::Duplicate, "line " + std::to_string(line_no) + ": duplicate entry for '" +
                                            s.name + "' epoch " + std::to_string(s.epoch));
    }
    rows.push_back(std::move(s));
  }
  if (!have_header && line_no > 0) {
    throw ParseError(line_no, "missing header '" + std::string(kCsvHeader) + "'");
  }
  return Catalog(std::move(rows));
}

Catalog load_catalog_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_catalog(in);
}

Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open catalog '" + path + "'");
  return load_catalog(in);
}

std::string to_csv(const Catalog& catalog) {
  auto opt = [](const std::optional<double>& v) { return v ? detail::format_double(*v) : std::string(); };
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& e : catalog.entries()) {
    out += detail::quote_csv(e.name) + ',' + opt(e.ra_deg) + ',' + opt(e.dec_deg) + ',' + opt(e.vmag) + ',' +
           detail::format_double(e.distance_ly) + ',' + opt(e.sigma_ly) + ',' + std::to_string(e.epoch) + '\n';
  }
  return out;
}

CelestialSource select_latest(const Catalog& catalog, std::string_view name) {
  const auto key = normalize_name(name);
  const CelestialSource* best = nullptr;
  for (const auto& e : catalog.entries()) {
    if (normalize_name(e.name) != key) continue;
    if (!best || e.epoch > best->epoch) best = &e;
  }
  if (!best) throw Error(ErrorKind::NotFound, "no catalog entry named '" + std::string(name) + "'");
  return *best;
}

}  // namespace cosmicrng::catalog
