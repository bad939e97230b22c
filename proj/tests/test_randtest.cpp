#include <doctest.h>

#include <cmath>
#include <string>

#include "cosmicrng/error.hpp"
#include "cosmicrng/randtest.hpp"
#include "cosmicrng/special.hpp"
#include "oracles.hpp"

using namespace cosmicrng;
using namespace cosmicrng::randtest;

namespace {

const std::string kEps100 =
    "1100100100001111110110101010001000100001011010001100001000110100110001001100011001100010100010111000";
const std::string kEps128 =
    "11001100000101010110110001001100111000000000001001001101010100010001001111010110100000001101011111001100111001101101"
    "100010110010";

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

BitSequence random_sequence(std::size_t n, std::uint64_t seed) { return BitSequence(oracle::random_bits(n, seed)); }

/// Longest-run p-value with class probabilities from the dynamic program.
double longest_run_oracle_p(const BitSequence& s, std::size_t m, std::size_t v_min, std::size_t k) {
  const auto dist = oracle::longest_run_distribution(m, v_min + k);
  std::vector<double> pi(k + 1, 0.0);
  for (std::size_t l = 0; l <= v_min; ++l) pi[0] += dist[l];
  for (std::size_t i = 1; i <= k; ++i) pi[i] = dist[v_min + i];
  std::vector<double> nu(k + 1, 0.0);
  const std::size_t blocks = s.size() / m;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t run = 0, longest = 0;
    for (std::size_t j = 0; j < m; ++j) {
      run = s[b * m + j] ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    nu[std::min(k, longest <= v_min ? 0 : longest - v_min)] += 1.0;
  }
  double chi2 = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    const double e = static_cast<double>(blocks) * pi[i];
    chi2 += (nu[i] - e) * (nu[i] - e) / e;
  }
  return special::igamc(static_cast<double>(k) / 2.0, chi2 / 2.0);
}

std::size_t count_runs(const std::string& s) {
  std::size_t runs = 1;
  for (std::size_t i = 1; i < s.size(); ++i) runs += s[i] != s[i - 1];
  return runs;
}

}  // namespace

TEST_CASE("bit sequence construction") {
  const auto s = BitSequence::from_string("10 11\n0");
  CHECK(s.size() == 5);
  CHECK(s[0] == 1);
  CHECK(s.complement() == BitSequence::from_string("01001"));
  CHECK(s.reversed() == BitSequence::from_string("01101"));
  CHECK(BitSequence::from_bytes(std::vector<std::uint8_t>{0x80, 0x01}) ==
        BitSequence::from_string("1000000000000001"));
  CHECK(kind_of([] { (void)BitSequence::from_string("10x1"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { (void)BitSequence::from_string(""); }) == ErrorKind::Validation);
  CHECK(kind_of([] { (void)BitSequence(std::vector<std::uint8_t>{0, 2}); }) == ErrorKind::Validation);
}

TEST_CASE("frequency test on hand-evaluated inputs") {
  CHECK(frequency_test(BitSequence::from_string("1011010101")).p_values[0] ==
        doctest::Approx(0.5270892568655381).epsilon(1e-12));
  const auto ones = frequency_test(BitSequence::from_string("1111111111"));
  CHECK(ones.p_values[0] == doctest::Approx(0.001565402258002548).epsilon(1e-10));
  CHECK_FALSE(ones.passed);
  CHECK(frequency_test(BitSequence::from_string(kEps100)).p_values[0] == doctest::Approx(0.109599).epsilon(1e-5));
}

TEST_CASE("block frequency on a hand-evaluated input") {
  const auto r = block_frequency_test(BitSequence::from_string("0110011010"), 3);
  CHECK(r.p_values[0] == doctest::Approx(0.8012519569012009).epsilon(1e-10));
  CHECK(r.passed);
  CHECK(kind_of([] { (void)block_frequency_test(BitSequence::from_string("0101"), 5); }) == ErrorKind::Length);
  CHECK(kind_of([] { (void)block_frequency_test(BitSequence::from_string("0101"), 0); }) == ErrorKind::Validation);
}

TEST_CASE("runs test reference example") {
  const auto s = BitSequence::from_string(kEps100);
  CHECK(count_runs(kEps100) == 52);
  CHECK(runs_test(s).p_values[0] == doctest::Approx(0.500798).epsilon(1e-5));
  CHECK(kind_of([] { (void)runs_test(BitSequence::from_string("0101")); }) == ErrorKind::Length);
}

TEST_CASE("runs test prerequisite fails a biased sequence") {
  std::string biased(100, '1');
  for (std::size_t i = 0; i < 20; ++i) biased[i * 5] = '0';
  const auto r = runs_test(BitSequence::from_string(biased));
  CHECK(r.p_values[0] == 0.0);
  CHECK_FALSE(r.passed);
}

TEST_CASE("cumulative sums reference example") {
  const auto s = BitSequence::from_string(kEps100);
  CHECK(cumulative_sums_test(s, CusumDirection::Forward).p_values[0] == doctest::Approx(0.219194).epsilon(1e-5));
  CHECK(cumulative_sums_test(s, CusumDirection::Backward).p_values[0] == doctest::Approx(0.114866).epsilon(1e-5));
  const auto both = cumulative_sums_test(s);
  REQUIRE(both.p_values.size() == 2);
  CHECK(both.p_values[1] == doctest::Approx(0.114866).epsilon(1e-5));
}

TEST_CASE("cumulative sums backward equals forward on the reversed sequence") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = random_sequence(2000, seed);
    CHECK(cumulative_sums_test(s, CusumDirection::Backward).p_values[0] ==
          doctest::Approx(cumulative_sums_test(s.reversed(), CusumDirection::Forward).p_values[0]));
  }
}

TEST_CASE("longest run reference example") {
  const auto r = longest_run_test(BitSequence::from_string(kEps128));
  CHECK(r.p_values[0] == doctest::Approx(0.180609).epsilon(1e-5));
}

TEST_CASE("longest-run class probabilities") {
  const auto enumerated = oracle::longest_run_distribution_enumerated();
  const auto dp = oracle::longest_run_distribution(8, 8);
  for (std::size_t l = 0; l <= 8; ++l) CHECK(dp[l] == doctest::Approx(enumerated[l]).epsilon(1e-14));

  // Small and medium regimes are tabulated to near double precision.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto small = random_sequence(1000, seed);
    CHECK(longest_run_test(small).p_values[0] == doctest::Approx(longest_run_oracle_p(small, 8, 1, 3)).epsilon(1e-8));
    const auto medium = random_sequence(100'000, seed);
    CHECK(longest_run_test(medium).p_values[0] ==
          doctest::Approx(longest_run_oracle_p(medium, 128, 4, 5)).epsilon(1e-6));
  }
  // The large regime uses four-decimal probabilities.
  const auto large = random_sequence(1'000'000, 99);
  CHECK(std::abs(longest_run_test(large).p_values[0] - longest_run_oracle_p(large, 10'000, 10, 6)) < 1e-2);
}

TEST_CASE("FFT modulus matches a direct DFT") {
  for (std::size_t n : {1000u, 1024u, 1331u}) {
    const auto bits = oracle::random_bits(n, n);
    const auto fast = dft_modulus_half(BitSequence(bits));
    const auto slow = oracle::direct_dft_modulus(bits);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t k = 0; k < fast.size(); ++k) CHECK(fast[k] == doctest::Approx(slow[k]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("FFT test rejects a periodic sequence") {
  std::string periodic;
  while (periodic.size() < 4096) periodic += "1100";
  CHECK_FALSE(spectral_dft_test(BitSequence::from_string(periodic)).passed);
  CHECK(kind_of([] { (void)spectral_dft_test(BitSequence::from_string(std::string(999, '1'))); }) ==
        ErrorKind::Length);
}

TEST_CASE("serial oracle reproduces the reference example") {
  const auto [d1, d2] = oracle::serial_deltas("0011011101", 3);
  CHECK(special::igamc(2.0, d1 / 2.0) == doctest::Approx(0.808792).epsilon(1e-5));
  CHECK(special::igamc(1.0, d2 / 2.0) == doctest::Approx(0.670320).epsilon(1e-5));
}

TEST_CASE("serial test matches brute-force pattern counting") {
  for (unsigned m : {2u, 3u, 5u, 8u}) {
    const auto bits = oracle::random_bits(4096, m);
    const auto r = serial_test(BitSequence(bits), m);
    const auto [d1, d2] = oracle::serial_deltas(oracle::to_string(bits), static_cast<int>(m));
    CHECK(r.p_values[0] == doctest::Approx(special::igamc(std::ldexp(1.0, static_cast<int>(m) - 2), d1 / 2.0)));
    CHECK(r.p_values[1] == doctest::Approx(special::igamc(std::ldexp(1.0, static_cast<int>(m) - 3), d2 / 2.0)));
  }
  CHECK(kind_of([] { (void)serial_test(random_sequence(64, 1), 4); }) == ErrorKind::Length);
  CHECK(kind_of([] { (void)serial_test(random_sequence(64, 1), 0); }) == ErrorKind::Validation);
}

TEST_CASE("serial with m = 1 reduces to the frequency test") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_sequence(1000, seed);
    CHECK(serial_test(s, 1).p_values[0] == doctest::Approx(frequency_test(s).p_values[0]).epsilon(1e-10));
  }
}

TEST_CASE("approximate entropy oracle reproduces the reference example") {
  CHECK(special::igamc(4.0, oracle::apen_chi2("0100110101", 3) / 2.0) == doctest::Approx(0.261961).epsilon(1e-5));
}

TEST_CASE("approximate entropy matches brute-force pattern counting") {
  for (unsigned m : {1u, 2u, 4u, 6u}) {
    const auto bits = oracle::random_bits(8192, 100 + m);
    const auto r = approximate_entropy_test(BitSequence(bits), m);
    const double chi2 = oracle::apen_chi2(oracle::to_string(bits), m);
    CHECK(r.p_values[0] ==
          doctest::Approx(special::igamc(std::ldexp(1.0, static_cast<int>(m) - 1), chi2 / 2.0)).epsilon(1e-8));
  }
  CHECK(kind_of([] { (void)approximate_entropy_test(random_sequence(128, 1), 2); }) == ErrorKind::Length);
}

TEST_CASE("complement symmetry") {
  // Tests that only see run structure or |sums| give the same answer on the complement.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = random_sequence(20'000, seed);
    const auto c = s.complement();
    CHECK(frequency_test(s).p_values[0] == doctest::Approx(frequency_test(c).p_values[0]));
    CHECK(runs_test(s).p_values[0] == doctest::Approx(runs_test(c).p_values[0]));
    CHECK(cumulative_sums_test(s).p_values == cumulative_sums_test(c).p_values);
    CHECK(spectral_dft_test(s).p_values[0] == doctest::Approx(spectral_dft_test(c).p_values[0]));
    CHECK(serial_test(s, 5).p_values[0] == doctest::Approx(serial_test(c, 5).p_values[0]));
    CHECK(approximate_entropy_test(s, 3).p_values[0] == doctest::Approx(approximate_entropy_test(c, 3).p_values[0]));
  }
}

TEST_CASE("p-values stay in [0, 1]") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = random_sequence(10'000, seed);
    for (const auto& r : {frequency_test(s), block_frequency_test(s, 100), runs_test(s), longest_run_test(s),
                          cumulative_sums_test(s), spectral_dft_test(s), serial_test(s, 8),
                          approximate_entropy_test(s, 5)}) {
      for (double p : r.p_values) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
      }
    }
  }
}
