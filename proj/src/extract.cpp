#include "cosmicrng/extract.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>

#include "cosmicrng/error.hpp"
#include "text_util.hpp"

namespace cosmicrng::extract {

void validate(const ExtractionConfig& cfg) {
  if (cfg.n_bins < 2 || cfg.n_bins > 256 || !std::has_single_bit(cfg.n_bins)) {
    throw Error(ErrorKind::Validation, "n_bins must be a power of two in [2, 256]");
  }
  if (cfg.t_window_ps <= 0 || cfg.t_window_ps % cfg.n_bins != 0) {
    throw Error(ErrorKind::Validation, "t_window_ps must be a positive multiple of n_bins");
  }
}

double BinHistogram::probability(std::size_t bin) const {
  if (total == 0) throw Error(ErrorKind::EmptyData, "empty histogram");
  return static_cast<double>(counts.at(bin)) / static_cast<double>(total);
}

std::uint32_t code_for(std::int64_t t_ps, const ExtractionConfig& cfg) {
  return static_cast<std::uint32_t>((t_ps % cfg.t_window_ps) / cfg.bin_width_ps());
}

BitstreamRecord extract_bits(const photonsim::TimestampSeries& series, const ExtractionConfig& cfg) {
  validate(cfg);
  photonsim::check_strictly_increasing(series);

  BitstreamRecord rec;
  rec.codes.reserve(series.size());
  // All arithmetic is in integer picoseconds; the window is not a whole
  // number of ticks.
  std::int64_t last_cycle = -1;
  for (const auto t : series.times_ps) {
    const std::int64_t cycle = t / cfg.t_window_ps;
    if (cycle == last_cycle) {
      ++rec.n_collisions;
      continue;
    }
    last_cycle = cycle;
    rec.codes.push_back(static_cast<std::uint8_t>(code_for(t, cfg)));
  }
  const std::int64_t span_ps =
      std::max(series.duration_ps, series.times_ps.empty() ? std::int64_t{0} : series.times_ps.back() + 1);
  rec.n_cycles_observed = static_cast<std::uint64_t>((span_ps + cfg.t_window_ps - 1) / cfg.t_window_ps);
  return rec;
}

BinHistogram histogram(std::span<const std::uint8_t> codes, std::uint32_t n_bins) {
  if (n_bins == 0 || n_bins > 256) throw Error(ErrorKind::Validation, "n_bins must be in [1, 256]");
  BinHistogram h;
  h.counts.assign(n_bins, 0);
  for (const auto c : codes) {
    if (c >= n_bins) throw Error(ErrorKind::Range, "code " + std::to_string(c) + " outside [0, n_bins)");
    ++h.counts[c];
  }
  h.total = codes.size();
  return h;
}

BinHistogram histogram(const BitstreamRecord& rec, std::uint32_t n_bins) { return histogram(rec.bytes(), n_bins); }

double min_entropy(const BinHistogram& h) {
  if (h.total == 0) throw Error(ErrorKind::EmptyData, "min-entropy of an empty histogram");
  if (h.n_bins() < 2) throw Error(ErrorKind::Validation, "min-entropy needs at least two bins");
  const auto max_count = *std::max_element(h.counts.begin(), h.counts.end());
  const double p_max = static_cast<double>(max_count) / static_cast<double>(h.total);
  // +0.0 folds the -0.0 of a single-bin distribution.
  return -std::log2(p_max) / std::log2(static_cast<double>(h.n_bins())) + 0.0;
}

std::string histogram_csv(const BinHistogram& h) {
  std::string out = "bin,count,probability\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double p = h.total ? static_cast<double>(h.counts[i]) / static_cast<double>(h.total) : 0.0;
    out += std::to_string(i) + ',' + std::to_string(h.counts[i]) + ',' + detail::format_double(p) + '\n';
  }
  return out;
}

std::vector<std::uint8_t> unpack_bits_msb_first(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> bits(bytes.size() * 8);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    for (int b = 0; b < 8; ++b) bits[i * 8 + static_cast<std::size_t>(b)] = (bytes[i] >> (7 - b)) & 1u;
  }
  return bits;
}

std::vector<std::uint8_t> read_bytes_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot create '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace cosmicrng::extract
