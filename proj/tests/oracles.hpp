#pragma once

// Independent reference computations used only by the tests. Each one takes
// a different route from the library code it checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace oracle {

inline constexpr double kDeg = std::numbers::pi / 180.0;

/// Spherical law of cosines taken literally (acos of the dot product).
inline double angular_separation_acos(double ra1, double dec1, double ra2, double dec2) {
  const double c = std::sin(dec1 * kDeg) * std::sin(dec2 * kDeg) +
                   std::cos(dec1 * kDeg) * std::cos(dec2 * kDeg) * std::cos((ra1 - ra2) * kDeg);
  return std::acos(std::clamp(c, -1.0, 1.0)) / kDeg;
}

/// Angle between unit vectors built from (ra, dec).
inline double angular_separation_vectors(double ra1, double dec1, double ra2, double dec2) {
  auto unit = [](double ra, double dec) {
    return std::array<double, 3>{std::cos(dec * kDeg) * std::cos(ra * kDeg), std::cos(dec * kDeg) * std::sin(ra * kDeg),
                                 std::sin(dec * kDeg)};
  };
  const auto a = unit(ra1, dec1);
  const auto b = unit(ra2, dec2);
  const std::array<double, 3> cross{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return std::atan2(std::hypot(cross[0], cross[1], cross[2]), dot) / kDeg;
}

/// tau2 = (L1 + L2 + L12) / 2 in years for distances in light-years.
inline double tau2(double l1, double l2, double theta_deg) {
  const double l12 = std::sqrt(l1 * l1 + l2 * l2 - 2.0 * l1 * l2 * std::cos(theta_deg * kDeg));
  return 0.5 * (l1 + l2 + l12);
}

/// First-order uncertainty of tau2 from central differences in L1 and L2.
inline double sigma_tau2_finite_difference(double l1, double s1, double l2, double s2, double theta_deg) {
  const double h1 = 1e-4 * l1;
  const double h2 = 1e-4 * l2;
  const double d1 = (tau2(l1 + h1, l2, theta_deg) - tau2(l1 - h1, l2, theta_deg)) / (2.0 * h1);
  const double d2 = (tau2(l1, l2 + h2, theta_deg) - tau2(l1, l2 - h2, theta_deg)) / (2.0 * h2);
  return std::hypot(s1 * d1, s2 * d2);
}

/// O(n^2) DFT modulus of (2b - 1) over the first n/2 frequencies.
inline std::vector<double> direct_dft_modulus(const std::vector<std::uint8_t>& bits) {
  const std::size_t n = bits.size();
  std::vector<double> out(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      acc += (bits[j] ? 1.0 : -1.0) * std::polar(1.0, angle);
    }
    out[k] = std::abs(acc);
  }
  return out;
}

/// Probability that the longest run of ones in a random m-bit block is
/// exactly l for l < cap, with all longer runs lumped into entry `cap`.
/// Dynamic programming over (current run, longest so far), both capped.
inline std::vector<double> longest_run_distribution(std::size_t m, std::size_t cap) {
  using Grid = std::vector<std::vector<double>>;
  Grid state(cap + 1, std::vector<double>(cap + 1, 0.0));
  state[0][0] = 1.0;
  for (std::size_t step = 0; step < m; ++step) {
    Grid next(cap + 1, std::vector<double>(cap + 1, 0.0));
    for (std::size_t r = 0; r <= cap; ++r) {
      for (std::size_t l = r; l <= cap; ++l) {
        const double p = state[r][l];
        if (p == 0.0) continue;
        next[0][l] += 0.5 * p;
        const std::size_t r1 = std::min(cap, r + 1);
        next[r1][std::max(l, r1)] += 0.5 * p;
      }
    }
    state = std::move(next);
  }
  std::vector<double> dist(cap + 1, 0.0);
  for (std::size_t r = 0; r <= cap; ++r) {
    for (std::size_t l = 0; l <= cap; ++l) dist[l] += state[r][l];
  }
  return dist;
}

/// Same for m = 8 by enumerating all 256 blocks.
inline std::vector<double> longest_run_distribution_enumerated() {
  std::vector<double> dist(9, 0.0);
  for (unsigned block = 0; block < 256; ++block) {
    unsigned run = 0, longest = 0;
    for (int b = 7; b >= 0; --b) {
      run = (block >> b) & 1u ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    dist[longest] += 1.0 / 256.0;
  }
  return dist;
}

inline std::string to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto b : bits) s += static_cast<char>('0' + b);
  return s;
}

/// Pattern frequencies by string slicing of the wrapped sequence.
inline std::map<std::string, double> wrapped_pattern_counts(const std::string& s, std::size_t m) {
  std::map<std::string, double> counts;
  const std::string ext = s + s.substr(0, m - 1);
  for (std::size_t i = 0; i < s.size(); ++i) counts[ext.substr(i, m)] += 1.0;
  return counts;
}

inline double psi_squared(const std::string& s, int m) {
  if (m <= 0) return 0.0;
  double sum = 0.0;
  for (const auto& [_, c] : wrapped_pattern_counts(s, static_cast<std::size_t>(m))) sum += c * c;
  const double n = static_cast<double>(s.size());
  return std::pow(2.0, m) / n * sum - n;
}

/// Serial statistics (first and second differences of psi squared).
inline std::pair<double, double> serial_deltas(const std::string& s, int m) {
  const double a = psi_squared(s, m), b = psi_squared(s, m - 1), c = psi_squared(s, m - 2);
  return {a - b, a - 2.0 * b + c};
}

/// Approximate-entropy chi-square statistic.
inline double apen_chi2(const std::string& s, std::size_t m) {
  auto phi = [&](std::size_t k) {
    if (k == 0) return 0.0;
    double acc = 0.0;
    const double n = static_cast<double>(s.size());
    for (const auto& [_, c] : wrapped_pattern_counts(s, k)) acc += c / n * std::log(c / n);
    return acc;
  };
  return 2.0 * static_cast<double>(s.size()) * (std::numbers::ln2 - (phi(m) - phi(m + 1)));
}

/// OLS slope via the pairwise-difference identity
///   b = sum_{i<j} (x_j - x_i)(y_j - y_i) / sum_{i<j} (x_j - x_i)^2.
inline double pairwise_ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      num += (x[j] - x[i]) * (y[j] - y[i]);
      den += (x[j] - x[i]) * (x[j] - x[i]);
    }
  }
  return num / den;
}

/// Upper regularized gamma by composite Simpson quadrature of
/// t^(a-1) e^(-t) over [x, x + 60], divided by tgamma(a). Valid for a >= 1.
inline double igamc_quadrature(double a, double x) {
  const double upper = x + 60.0 + 4.0 * a;
  const int n = 200000;
  const double h = (upper - x) / n;
  auto f = [a](double t) { return std::exp((a - 1.0) * std::log(t) - t); };
  double acc = f(x) + f(upper);
  for (int i = 1; i < n; ++i) acc += f(x + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0 / std::tgamma(a);
}

inline std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(g() >> 63);
  return bits;
}

}  // namespace oracle
