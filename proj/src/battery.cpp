#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <thread>

#include <json.hpp>

#include "cosmicrng/error.hpp"
#include "cosmicrng/randtest.hpp"
#include "cosmicrng/special.hpp"

namespace cosmicrng::randtest {

namespace {

// p-values of every test for one sequence, in kTestNames order.
using SequenceOutcome = std::array<std::vector<double>, std::size(kTestNames)>;

SequenceOutcome evaluate(const BitSequence& s, const BatteryParams& p) {
  return {
      frequency_test(s).p_values,
      block_frequency_test(s, p.m_block).p_values,
      cumulative_sums_test(s).p_values,
      runs_test(s).p_values,
      longest_run_test(s).p_values,
      spectral_dft_test(s).p_values,
      serial_test(s, p.m_serial).p_values,
      approximate_entropy_test(s, p.m_apen).p_values,
  };
}

}  // namespace

BatteryParams default_battery_params(std::size_t n_bits) {
  BatteryParams p;
  if (n_bits >= 1'000'000) return p;
  if (n_bits >= 100'000) {
    p.m_serial = 13;
    p.m_apen = 7;
    return p;
  }
  const auto log2n = static_cast<unsigned>(std::bit_width(std::max<std::size_t>(n_bits, 2))) - 1;
  p.m_serial = log2n > 4 ? std::min(13u, log2n - 4) : 1;
  p.m_apen = log2n > 7 ? std::min(7u, log2n - 7) : 1;
  p.m_block = std::clamp<std::size_t>(n_bits / 100, 20, 128);
  return p;
}

double uniformity_p_value(std::span<const double> p_values) {
  if (p_values.empty()) throw Error(ErrorKind::EmptyData, "no p-values");
  std::array<double, 10> bins{};
  for (const double p : p_values) bins[std::min<std::size_t>(9, static_cast<std::size_t>(p * 10.0))] += 1.0;
  const double expected = static_cast<double>(p_values.size()) / 10.0;
  double chi2 = 0.0;
  for (const double b : bins) chi2 += (b - expected) * (b - expected) / expected;
  return special::igamc(4.5, chi2 / 2.0);
}

std::vector<BitSequence> split_sequences(std::span<const std::uint8_t> bits, std::size_t count, std::size_t length) {
  if (count == 0 || length == 0) throw Error(ErrorKind::Validation, "sequence count and length must be positive");
  if (count > bits.size() / length) {
    throw Error(ErrorKind::Length, "need " + std::to_string(count * length) + " bits, have " +
                                       std::to_string(bits.size()));
  }
  std::vector<BitSequence> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto first = bits.begin() + static_cast<std::ptrdiff_t>(i * length);
    out.emplace_back(std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(length)));
  }
  return out;
}

const TestSummary& BatteryReport::at(std::string_view test_name) const {
  for (const auto& t : tests) {
    if (t.test_name == test_name) return t;
  }
  throw Error(ErrorKind::NotFound, "no battery entry for '" + std::string(test_name) + "'");
}

BatteryReport run_battery(std::span<const BitSequence> sequences, const BatteryParams& params) {
  if (sequences.empty()) throw Error(ErrorKind::EmptyData, "battery needs at least one sequence");
  const std::size_t length = sequences.front().size();
  for (const auto& s : sequences) {
    if (s.size() != length) throw Error(ErrorKind::Shape, "battery sequences must have equal length");
  }

  std::vector<SequenceOutcome> outcomes(sequences.size());
  unsigned workers = params.threads ? params.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, sequences.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < sequences.size(); i = next++) outcomes[i] = evaluate(sequences[i], params);
        } catch (...) {
          errors[w] = std::current_exception();
          next = sequences.size();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  BatteryReport report;
  report.n_sequences = sequences.size();
  report.sequence_length = length;
  const bool uniformity = sequences.size() >= kMinSequencesForUniformity;
  if (!uniformity) {
    report.warnings.push_back("fewer than " + std::to_string(kMinSequencesForUniformity) +
                              " sequences: p-value uniformity not assessed");
  }

  const double s = static_cast<double>(sequences.size());
  const double p_hat = 1.0 - kSignificance;
  const double half_width = 3.0 * std::sqrt(p_hat * (1.0 - p_hat) / s);

  report.pass = true;
  for (std::size_t t = 0; t < std::size(kTestNames); ++t) {
    TestSummary row;
    row.test_name = std::string(kTestNames[t]);
    row.n_sequences = sequences.size();
    row.band_lo = std::max(0.0, p_hat - half_width);
    row.band_hi = std::min(1.0, p_hat + half_width);
    row.n_passed = sequences.size();
    const std::size_t outcomes_per_test = outcomes.front()[t].size();
    for (std::size_t k = 0; k < outcomes_per_test; ++k) {
      std::vector<double> column;
      column.reserve(sequences.size());
      std::size_t passed = 0;
      for (const auto& o : outcomes) {
        column.push_back(o[t][k]);
        passed += o[t][k] >= kSignificance;
      }
      row.n_passed = std::min(row.n_passed, passed);
      if (uniformity) {
        const double pu = uniformity_p_value(column);
        row.p_uniformity = row.p_uniformity ? std::min(*row.p_uniformity, pu) : pu;
      }
    }
    row.proportion = static_cast<double>(row.n_passed) / s;
    row.pass = row.proportion >= row.band_lo && (!row.p_uniformity || *row.p_uniformity >= kUniformityThreshold);
    report.pass = report.pass && row.pass;
    report.tests.push_back(std::move(row));
  }
  return report;
}

std::string battery_json(const BatteryReport& report) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& t : report.tests) {
    j[t.test_name] = {
        {"p_uniformity", t.p_uniformity ? nlohmann::ordered_json(*t.p_uniformity) : nlohmann::ordered_json()},
        {"proportion", t.proportion},
        {"proportion_band", {t.band_lo, t.band_hi}},
        {"pass", t.pass},
    };
  }
  return j.dump(2) + "\n";
}

}  // namespace cosmicrng::randtest
