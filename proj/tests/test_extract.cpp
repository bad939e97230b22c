#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include "cosmicrng/error.hpp"
#include "cosmicrng/extract.hpp"

using namespace cosmicrng;
using namespace cosmicrng::extract;
using photonsim::TimestampSeries;

TEST_CASE("code boundaries follow the 160 ps bin width") {
  const ExtractionConfig cfg;
  CHECK(cfg.bin_width_ps() == 160);
  CHECK(code_for(0, cfg) == 0);
  CHECK(code_for(159, cfg) == 0);
  CHECK(code_for(160, cfg) == 1);
  CHECK(code_for(40'959, cfg) == 255);
  CHECK(code_for(40'960, cfg) == 0);
  CHECK(code_for(40'960 * 7 + 320, cfg) == 2);
}

TEST_CASE("every tick of five cycles lands in a bin, 32 per bin") {
  // 5 cycles of 40.96 ns are exactly 8192 ticks of 25 ps.
  const ExtractionConfig cfg;
  std::vector<std::uint64_t> per_bin(256, 0);
  for (std::int64_t k = 0; k < 8192; ++k) ++per_bin[code_for(k * 25, cfg)];
  for (auto c : per_bin) CHECK(c == 32);
}

TEST_CASE("extract keeps the first event per cycle") {
  TimestampSeries s{{100, 200, 40'960 + 1'600, 3 * 40'960 + 40'800, 3 * 40'960 + 40'900}, 1, 4 * 40'960};
  const auto rec = extract_bits(s);
  CHECK(rec.codes == std::vector<std::uint8_t>{0, 10, 255});
  CHECK(rec.n_collisions == 2);
  CHECK(rec.n_cycles_observed == 4);
}

TEST_CASE("cycles observed covers a partial final cycle") {
  TimestampSeries s{{0}, 25, 40'961};
  CHECK(extract_bits(s).n_cycles_observed == 2);
  TimestampSeries empty{{}, 25, 0};
  const auto rec = extract_bits(empty);
  CHECK(rec.codes.empty());
  CHECK(rec.n_cycles_observed == 0);
}

TEST_CASE("dead time longer than the cycle prevents collisions") {
  photonsim::SimConfig c;
  c.signal_rate_hz = 5e6;
  c.duration_s = 0.02;
  c.seed = 4;
  const auto rec = extract_bits(photonsim::simulate_stream(c));
  CHECK(rec.n_collisions == 0);
  CHECK(rec.codes.size() > 50'000);
}

TEST_CASE("coarser binning") {
  ExtractionConfig cfg{40'960, 16};
  CHECK(cfg.bin_width_ps() == 2560);
  TimestampSeries s{{2559, 40'960 + 2560, 2 * 40'960 + 40'959}, 1, 3 * 40'960};
  CHECK(extract_bits(s, cfg).codes == std::vector<std::uint8_t>{0, 1, 15});
  CHECK_THROWS_AS(validate(ExtractionConfig{40'960, 100}), Error);
  CHECK_THROWS_AS(validate(ExtractionConfig{40'000, 256}), Error);
  CHECK_THROWS_AS(validate(ExtractionConfig{40'960, 512}), Error);
}

TEST_CASE("histogram and min-entropy") {
  std::vector<std::uint8_t> codes;
  for (int i = 0; i < 256; ++i) codes.push_back(static_cast<std::uint8_t>(i));
  const auto uniform = histogram(codes);
  CHECK(uniform.total == 256);
  CHECK(uniform.probability(7) == doctest::Approx(1.0 / 256));
  CHECK(min_entropy(uniform) == doctest::Approx(1.0));

  // Most likely outcome at 1/200.
  BinHistogram skewed;
  skewed.counts.assign(256, 0);
  skewed.counts[0] = 1;
  skewed.total = 200;
  CHECK(min_entropy(skewed) == doctest::Approx(0.9554820237218405).epsilon(1e-12));

  BinHistogram spike;
  spike.counts.assign(256, 0);
  spike.counts[3] = 10;
  spike.total = 10;
  CHECK(min_entropy(spike) == 0.0);

  CHECK_THROWS_AS(min_entropy(histogram(std::vector<std::uint8_t>{})), Error);
  CHECK_THROWS_AS(histogram(codes, 16), Error);
}

TEST_CASE("min-entropy is bounded by every outcome's probability") {
  std::mt19937_64 g(1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint8_t> codes(1000);
    const auto bias = static_cast<int>(g() % 256);
    for (auto& c : codes) c = static_cast<std::uint8_t>(g() % 5 == 0 ? bias : static_cast<int>(g() % 256));
    const auto hist = histogram(codes);
    const double h = min_entropy(hist);
    CHECK(h >= 0.0);
    CHECK(h <= 1.0);
    // No outcome can be less likely than the most likely one.
    CHECK(h <= -std::log2(hist.probability(static_cast<std::size_t>(bias))) / 8.0 + 1e-12);
  }
}

TEST_CASE("histogram CSV") {
  const auto csv = histogram_csv(histogram(std::vector<std::uint8_t>{0, 1, 1, 3}, 4));
  CHECK(csv == "bin,count,probability\n0,1,0.25\n1,2,0.5\n2,0,0\n3,1,0.25\n");
}

TEST_CASE("MSB-first unpacking") {
  const std::vector<std::uint8_t> bytes{0xA5, 0x01};
  const auto bits = unpack_bits_msb_first(bytes);
  CHECK(bits == std::vector<std::uint8_t>{1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1});
}

TEST_CASE("byte file round trip") {
  const auto path = (std::filesystem::temp_directory_path() / "cosmicrng_bytes.bin").string();
  const std::vector<std::uint8_t> bytes{0, 255, 17, 42};
  write_bytes_file(path, bytes);
  CHECK(read_bytes_file(path) == bytes);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_bytes_file(path), Error);
}
