#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "cosmicrng/error.hpp"
#include "cosmicrng/photonsim.hpp"
#include "text_util.hpp"

namespace cosmicrng::photonsim {

namespace {

void finish(TimestampSeries& s, std::int64_t duration_ps) {
  check_strictly_increasing(s);
  for (const auto t : s.times_ps) {
    if (t % s.tick_ps != 0) throw Error(ErrorKind::Validation, "timestamp not on the tick grid");
  }
  if (duration_ps >= 0) {
    if (!s.times_ps.empty() && s.times_ps.back() >= duration_ps) {
      throw Error(ErrorKind::Validation, "timestamp beyond the stated duration");
    }
    s.duration_ps = duration_ps;
  } else {
    s.duration_ps = s.times_ps.empty() ? 0 : s.times_ps.back() + s.tick_ps;
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return in;
}

}  // namespace

void write_cpt1(std::ostream& out, const TimestampSeries& series) {
  check_strictly_increasing(series);
  out.write(kCpt1Magic, sizeof kCpt1Magic);
  std::array<char, 8> buf{};
  for (const auto t : series.times_ps) {
    if (t % series.tick_ps != 0) throw Error(ErrorKind::Validation, "timestamp not on the tick grid");
    auto ticks = static_cast<std::uint64_t>(t / series.tick_ps);
    for (auto& b : buf) {
      b = static_cast<char>(ticks & 0xffu);
      ticks >>= 8;
    }
    out.write(buf.data(), buf.size());
  }
  if (!out) throw Error(ErrorKind::Io, "write failed");
}

void write_cpt1_file(const std::string& path, const TimestampSeries& series) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot create '" + path + "'");
  write_cpt1(out, series);
}

TimestampSeries read_cpt1(std::istream& in, std::int64_t tick_ps, std::int64_t duration_ps) {
  if (tick_ps <= 0) throw Error(ErrorKind::Validation, "tick must be positive");
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kCpt1Magic, sizeof magic) != 0) {
    throw Error(ErrorKind::Parse, "missing CPT1 magic");
  }
  TimestampSeries s;
  s.tick_ps = tick_ps;
  std::array<unsigned char, 8> buf{};
  while (in.read(reinterpret_cast<char*>(buf.data()), buf.size())) {
    std::uint64_t ticks = 0;
    for (int i = 7; i >= 0; --i) ticks = (ticks << 8) | buf[static_cast<std::size_t>(i)];
    if (ticks > static_cast<std::uint64_t>(INT64_MAX / tick_ps)) throw Error(ErrorKind::Range, "tick count overflow");
    s.times_ps.push_back(static_cast<std::int64_t>(ticks) * tick_ps);
  }
  if (in.gcount() != 0) throw Error(ErrorKind::Parse, "truncated CPT1 record");
  finish(s, duration_ps);
  return s;
}

TimestampSeries read_cpt1_file(const std::string& path, std::int64_t tick_ps, std::int64_t duration_ps) {
  auto in = open_in(path);
  return read_cpt1(in, tick_ps, duration_ps);
}

void write_text(std::ostream& out, const TimestampSeries& series) {
  for (const auto t : series.times_ps) out << t << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed");
}

TimestampSeries read_text(std::istream& in, std::int64_t tick_ps, std::int64_t duration_ps) {
  if (tick_ps <= 0) throw Error(ErrorKind::Validation, "tick must be positive");
  TimestampSeries s;
  s.tick_ps = tick_ps;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    try {
      s.times_ps.push_back(*detail::parse_integer(body));
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  finish(s, duration_ps);
  return s;
}

TimestampSeries read_timestamps_file(const std::string& path, std::int64_t tick_ps, std::int64_t duration_ps) {
  auto in = open_in(path);
  char head[8] = {};
  in.read(head, sizeof head);
  const bool binary = in.gcount() == 8 && std::memcmp(head, kCpt1Magic, sizeof head) == 0;
  in.clear();
  in.seekg(0);
  return binary ? read_cpt1(in, tick_ps, duration_ps) : read_text(in, tick_ps, duration_ps);
}

}  // namespace cosmicrng::photonsim
