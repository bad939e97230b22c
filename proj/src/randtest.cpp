#include "cosmicrng/randtest.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include "cosmicrng/error.hpp"
#include "cosmicrng/special.hpp"

namespace cosmicrng::randtest {

using special::erfc;
using special::igamc;
using special::normal_cdf;

namespace {

TestResult make_result(std::string name, std::vector<double> p_values) {
  for (auto& p : p_values) p = std::clamp(p, 0.0, 1.0);
  const bool passed =
      std::all_of(p_values.begin(), p_values.end(), [](double p) { return p >= kSignificance; });
  return {std::move(name), std::move(p_values), passed};
}

void require_length(const BitSequence& s, std::size_t min_n, std::string_view test) {
  if (s.size() < min_n) {
    throw Error(ErrorKind::Length, std::string(test) + " needs at least " + std::to_string(min_n) +
                                       " bits, got " + std::to_string(s.size()));
  }
}

std::size_t floor_log2(std::size_t n) { return static_cast<std::size_t>(std::bit_width(n)) - 1; }

std::size_t count_ones(const BitSequence& s) {
  return static_cast<std::size_t>(std::count(s.bits().begin(), s.bits().end(), std::uint8_t{1}));
}

// Overlapping m-bit pattern counts with the sequence wrapped around.
std::vector<std::uint32_t> pattern_counts(const BitSequence& s, unsigned m) {
  std::vector<std::uint32_t> counts(std::size_t{1} << m, 0);
  if (m == 0) {
    counts[0] = static_cast<std::uint32_t>(s.size());
    return counts;
  }
  const std::size_t n = s.size();
  const std::uint32_t mask = (std::uint32_t{1} << m) - 1;
  std::uint32_t window = 0;
  for (unsigned i = 0; i + 1 < m; ++i) window = (window << 1) | s[i % n];
  for (std::size_t i = 0; i < n; ++i) {
    window = ((window << 1) | s[(i + m - 1) % n]) & mask;
    ++counts[window];
  }
  return counts;
}

double psi_squared(const BitSequence& s, int m) {
  if (m <= 0) return 0.0;
  const auto counts = pattern_counts(s, static_cast<unsigned>(m));
  const double n = static_cast<double>(s.size());
  double sum = 0.0;
  for (const auto c : counts) sum += static_cast<double>(c) * static_cast<double>(c);
  return std::ldexp(sum, m) / n - n;
}

double apen_phi(const BitSequence& s, unsigned m) {
  if (m == 0) return 0.0;
  const auto counts = pattern_counts(s, m);
  const double n = static_cast<double>(s.size());
  double phi = 0.0;
  for (const auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    phi += p * std::log(p);
  }
  return phi;
}

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

BitSequence::BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw Error(ErrorKind::Validation, "bit sequence must be non-empty");
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
    throw Error(ErrorKind::Validation, "bit values must be 0 or 1");
  }
}

BitSequence BitSequence::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (const char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c != ' ' && c != '\n' && c != '\t' && c != '\r') {
      throw Error(ErrorKind::Parse, std::string("unexpected character '") + c + "' in bit string");
    }
  }
  return BitSequence(std::move(bits));
}

BitSequence BitSequence::from_bytes(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> bits(bytes.size() * 8);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    for (int b = 0; b < 8; ++b) bits[i * 8 + static_cast<std::size_t>(b)] = (bytes[i] >> (7 - b)) & 1u;
  }
  return BitSequence(std::move(bits));
}

BitSequence BitSequence::complement() const {
  auto bits = bits_;
  for (auto& b : bits) b ^= 1u;
  return BitSequence(std::move(bits));
}

BitSequence BitSequence::reversed() const { return BitSequence({bits_.rbegin(), bits_.rend()}); }

TestResult frequency_test(const BitSequence& s) {
  const double n = static_cast<double>(s.size());
  const double sum = 2.0 * static_cast<double>(count_ones(s)) - n;
  const double s_obs = std::abs(sum) / std::sqrt(n);
  return make_result("Frequency", {erfc(s_obs / std::numbers::sqrt2)});
}

TestResult block_frequency_test(const BitSequence& s, std::size_t m_block) {
  if (m_block == 0) throw Error(ErrorKind::Validation, "block length must be positive");
  if (m_block > s.size()) {
    throw Error(ErrorKind::Length, "BlockFrequency block length " + std::to_string(m_block) +
                                       " exceeds sequence length " + std::to_string(s.size()));
  }
  const std::size_t blocks = s.size() / m_block;
  double sum = 0.0;
  for (std::size_t i = 0; i < blocks; ++i) {
    const auto first = s.bits().begin() + static_cast<std::ptrdiff_t>(i * m_block);
    const auto ones = std::count(first, first + static_cast<std::ptrdiff_t>(m_block), std::uint8_t{1});
    const double pi = static_cast<double>(ones) / static_cast<double>(m_block) - 0.5;
    sum += pi * pi;
  }
  const double chi2 = 4.0 * static_cast<double>(m_block) * sum;
  return make_result("BlockFrequency", {igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0)});
}

TestResult runs_test(const BitSequence& s) {
  require_length(s, 100, "Runs");
  const double n = static_cast<double>(s.size());
  const double pi = static_cast<double>(count_ones(s)) / n;
  // Frequency prerequisite: a biased sequence fails outright.
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(n)) return make_result("Runs", {0.0});
  std::size_t v_obs = 1;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) v_obs += s[k] != s[k + 1];
  const double num = std::abs(static_cast<double>(v_obs) - 2.0 * n * pi * (1.0 - pi));
  const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
  return make_result("Runs", {erfc(num / den)});
}

TestResult longest_run_test(const BitSequence& s) {
  require_length(s, 128, "LongestRun");
  struct Regime {
    std::size_t m;
    unsigned v_min;
    std::vector<double> pi;
  };
  static const Regime small{8, 1, {0.21484375, 0.3671875, 0.23046875, 0.1875}};
  static const Regime medium{128, 4, {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847}};
  static const Regime large{10000, 10, {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727}};
  const Regime& r = s.size() < 6272 ? small : (s.size() < 750000 ? medium : large);

  const std::size_t k = r.pi.size() - 1;
  const std::size_t blocks = s.size() / r.m;
  std::vector<double> nu(r.pi.size(), 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    unsigned run = 0, longest = 0;
    for (std::size_t j = 0; j < r.m; ++j) {
      run = s[b * r.m + j] ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    const auto cls = std::min<std::size_t>(k, longest <= r.v_min ? 0 : longest - r.v_min);
    nu[cls] += 1.0;
  }
  double chi2 = 0.0;
  const double nb = static_cast<double>(blocks);
  for (std::size_t i = 0; i <= k; ++i) {
    const double expected = nb * r.pi[i];
    chi2 += (nu[i] - expected) * (nu[i] - expected) / expected;
  }
  return make_result("LongestRun", {igamc(static_cast<double>(k) / 2.0, chi2 / 2.0)});
}

TestResult cumulative_sums_test(const BitSequence& s, CusumDirection direction) {
  require_length(s, 100, "CumulativeSums");
  const std::size_t n = s.size();
  long long sum = 0, z = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t idx = direction == CusumDirection::Forward ? i : n - 1 - i;
    sum += s[idx] ? 1 : -1;
    z = std::max(z, std::llabs(sum));
  }
  const double nd = static_cast<double>(n);
  const double zd = static_cast<double>(z);
  const double sqrt_n = std::sqrt(nd);
  double sum1 = 0.0;
  for (auto k = static_cast<long long>(std::floor((-nd / zd + 1.0) / 4.0));
       k <= static_cast<long long>(std::floor((nd / zd - 1.0) / 4.0)); ++k) {
    const auto kd = static_cast<double>(k);
    sum1 += normal_cdf((4.0 * kd + 1.0) * zd / sqrt_n) - normal_cdf((4.0 * kd - 1.0) * zd / sqrt_n);
  }
  double sum2 = 0.0;
  for (auto k = static_cast<long long>(std::floor((-nd / zd - 3.0) / 4.0));
       k <= static_cast<long long>(std::floor((nd / zd - 1.0) / 4.0)); ++k) {
    const auto kd = static_cast<double>(k);
    sum2 += normal_cdf((4.0 * kd + 3.0) * zd / sqrt_n) - normal_cdf((4.0 * kd + 1.0) * zd / sqrt_n);
  }
  return make_result("CumulativeSums", {1.0 - sum1 + sum2});
}

TestResult cumulative_sums_test(const BitSequence& s) {
  const auto fwd = cumulative_sums_test(s, CusumDirection::Forward);
  const auto bwd = cumulative_sums_test(s, CusumDirection::Backward);
  return make_result("CumulativeSums", {fwd.p_values[0], bwd.p_values[0]});
}

std::vector<double> dft_modulus_half(const BitSequence& s) {
  const std::size_t n = s.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = s[i] ? 1.0 : -1.0;
  auto* spectrum = fftw_alloc_complex(n / 2 + 1);
  fftw_plan plan;
  {
    // Only plan creation and destruction touch FFTW's global state.
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), x.data(), spectrum, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::vector<double> modulus(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) modulus[j] = std::hypot(spectrum[j][0], spectrum[j][1]);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(spectrum);
  return modulus;
}

TestResult spectral_dft_test(const BitSequence& s) {
  require_length(s, 1000, "FFT");
  const double n = static_cast<double>(s.size());
  const auto modulus = dft_modulus_half(s);
  const double threshold = std::sqrt(std::log(1.0 / 0.05) * n);
  const double n0 = 0.95 * n / 2.0;
  const auto n1 = static_cast<double>(
      std::count_if(modulus.begin(), modulus.end(), [&](double m) { return m < threshold; }));
  const double d = (n1 - n0) / std::sqrt(n * 0.95 * 0.05 / 4.0);
  return make_result("FFT", {erfc(std::abs(d) / std::numbers::sqrt2)});
}

TestResult serial_test(const BitSequence& s, unsigned m) {
  if (m < 1 || m > 24) throw Error(ErrorKind::Validation, "Serial block length must be in [1, 24]");
  if (m + 2 >= floor_log2(s.size())) {
    throw Error(ErrorKind::Length, "Serial with m=" + std::to_string(m) + " needs at least " +
                                       std::to_string(std::size_t{1} << (m + 3)) + " bits");
  }
  const int mi = static_cast<int>(m);
  const double psi_m = psi_squared(s, mi);
  const double psi_m1 = psi_squared(s, mi - 1);
  const double psi_m2 = psi_squared(s, mi - 2);
  const double del1 = psi_m - psi_m1;
  const double del2 = psi_m - 2.0 * psi_m1 + psi_m2;
  return make_result("Serial", {igamc(std::ldexp(1.0, mi - 2), std::max(0.0, del1) / 2.0),
                                igamc(std::ldexp(1.0, mi - 3), std::max(0.0, del2) / 2.0)});
}

TestResult approximate_entropy_test(const BitSequence& s, unsigned m) {
  if (m < 1 || m > 24) throw Error(ErrorKind::Validation, "ApproximateEntropy block length must be in [1, 24]");
  if (m + 5 >= floor_log2(s.size())) {
    throw Error(ErrorKind::Length, "ApproximateEntropy with m=" + std::to_string(m) + " needs at least " +
                                       std::to_string(std::size_t{1} << (m + 6)) + " bits");
  }
  const double n = static_cast<double>(s.size());
  const double apen = apen_phi(s, m) - apen_phi(s, m + 1);
  const double chi2 = 2.0 * n * (std::numbers::ln2 - apen);
  return make_result("ApproximateEntropy", {igamc(std::ldexp(1.0, static_cast<int>(m) - 1), std::max(0.0, chi2) / 2.0)});
}

}  // namespace cosmicrng::randtest
