#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cosmicrng::randtest {

inline constexpr double kSignificance = 0.01;

/// A non-empty sequence of bits stored one per byte (values 0 or 1).
class BitSequence {
 public:
  /// Throws Validation if empty or a value is not 0/1.
  explicit BitSequence(std::vector<std::uint8_t> bits);

  /// From a string of '0'/'1' characters; whitespace is ignored.
  static BitSequence from_string(std::string_view text);

  /// MSB-first unpacking of raw bytes.
  static BitSequence from_bytes(std::span<const std::uint8_t> bytes);

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  BitSequence complement() const;
  BitSequence reversed() const;

  bool operator==(const BitSequence&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct TestResult {
  std::string test_name;
  std::vector<double> p_values;
  bool passed = false;  // every p-value >= kSignificance
};

enum class CusumDirection { Forward, Backward };

TestResult frequency_test(const BitSequence& s);
TestResult block_frequency_test(const BitSequence& s, std::size_t m_block);
TestResult runs_test(const BitSequence& s);
TestResult longest_run_test(const BitSequence& s);
TestResult cumulative_sums_test(const BitSequence& s, CusumDirection direction);
/// Forward and backward p-values, in that order.
TestResult cumulative_sums_test(const BitSequence& s);
TestResult spectral_dft_test(const BitSequence& s);
/// Two p-values: first and second differences of the psi-squared statistic.
TestResult serial_test(const BitSequence& s, unsigned m);
TestResult approximate_entropy_test(const BitSequence& s, unsigned m);

/// Spectral test statistic pieces, exposed for checking the transform path.
std::vector<double> dft_modulus_half(const BitSequence& s);

/// Block-length parameters for the battery.
struct BatteryParams {
  std::size_t m_block = 128;
  unsigned m_serial = 16;
  unsigned m_apen = 10;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Defaults by sequence length: (128, 16, 10) at 1e6 bits, (128, 13, 7) at
/// 1e5, and shrinking serial/ApEn block lengths for shorter sequences.
BatteryParams default_battery_params(std::size_t n_bits);

/// One row of the battery. Multi-outcome tests report their worst
/// sub-test (lowest proportion, lowest uniformity p-value).
struct TestSummary {
  std::string test_name;
  std::size_t n_sequences = 0;
  std::size_t n_passed = 0;  // of the worst sub-test
  double proportion = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  std::optional<double> p_uniformity;  // absent below kMinSequencesForUniformity
  bool pass = false;
};

inline constexpr std::size_t kMinSequencesForUniformity = 55;
inline constexpr double kUniformityThreshold = 1e-4;

struct BatteryReport {
  std::vector<TestSummary> tests;
  std::size_t n_sequences = 0;
  std::size_t sequence_length = 0;
  std::vector<std::string> warnings;
  bool pass = false;

  const TestSummary& at(std::string_view test_name) const;
};

/// Runs all eight tests on every sequence. Sequences may be evaluated in
/// parallel; aggregation is in input order. Throws Shape on unequal lengths.
BatteryReport run_battery(std::span<const BitSequence> sequences, const BatteryParams& params);

/// Splits a bit stream into `count` consecutive sequences of `length` bits.
std::vector<BitSequence> split_sequences(std::span<const std::uint8_t> bits, std::size_t count, std::size_t length);

/// Chi-square over ten equal-width p-value bins, as igamc(9/2, chi2/2).
double uniformity_p_value(std::span<const double> p_values);

/// `{test: {p_uniformity, proportion, proportion_band: [lo, hi], pass}}`
std::string battery_json(const BatteryReport& report);

inline constexpr std::string_view kTestNames[] = {
    "Frequency", "BlockFrequency", "CumulativeSums", "Runs",
    "LongestRun", "FFT", "Serial", "ApproximateEntropy",
};

}  // namespace cosmicrng::randtest
