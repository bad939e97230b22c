#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cosmicrng/photonsim.hpp"

namespace cosmicrng::extract {

/// Clock period and its subdivision into time bins. Defaults give 256 bins
/// of 160 ps in a 40.96 ns cycle, one byte per detected photon.
struct ExtractionConfig {
  std::int64_t t_window_ps = 40'960;
  std::uint32_t n_bins = 256;

  std::int64_t bin_width_ps() const { return t_window_ps / n_bins; }
};

/// Throws Validation unless n_bins is a power of two in [2, 256] that
/// divides t_window_ps.
void validate(const ExtractionConfig& cfg);

/// Codes emitted by the time-bin scheme. Each code is its bin index and
/// occupies one byte, so the code vector doubles as the raw output bytes.
struct BitstreamRecord {
  std::vector<std::uint8_t> codes;
  std::uint64_t n_cycles_observed = 0;  // clock cycles spanned by the input
  std::uint64_t n_collisions = 0;       // later events in an already used cycle

  std::span<const std::uint8_t> bytes() const noexcept { return codes; }
  bool operator==(const BitstreamRecord&) const = default;
};

struct BinHistogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t n_bins() const noexcept { return counts.size(); }
  double probability(std::size_t bin) const;
};

/// Bin index of a single timestamp.
std::uint32_t code_for(std::int64_t t_ps, const ExtractionConfig& cfg);

/// Maps each event to (cycle, bin). Only the first event of a cycle emits a
/// code; later ones are counted in n_collisions.
BitstreamRecord extract_bits(const photonsim::TimestampSeries& series, const ExtractionConfig& cfg = {});

BinHistogram histogram(std::span<const std::uint8_t> codes, std::uint32_t n_bins = 256);
BinHistogram histogram(const BitstreamRecord& rec, std::uint32_t n_bins = 256);

/// -log2(max P_i) / log2(n_bins): per-bit min-entropy in [0, 1].
double min_entropy(const BinHistogram& h);

/// Histogram as `bin,count,probability` CSV rows.
std::string histogram_csv(const BinHistogram& h);

/// MSB-first expansion of bytes into 0/1 values.
std::vector<std::uint8_t> unpack_bits_msb_first(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_bytes_file(const std::string& path);
void write_bytes_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace cosmicrng::extract
