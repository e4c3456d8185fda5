#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "topk/core.hpp"

namespace testsupport {

using topk::Index;

inline constexpr double kTauR[] = {-8, -4, -2, -1, -0.5, -0.1, 0, 0.1, 0.5, 0.9, 0.99, 0.999};

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform() { return double(eng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Index pick(Index lo, Index hi) { return lo + Index(eng() % std::uint64_t(hi - lo + 1)); }
  double tau_r() { return kTauR[pick(0, 11)]; }

  std::vector<double> vec(Index n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = uniform();
    return v;
  }
  // Small integers, so ties are common.
  std::vector<double> int_vec(Index n, int maxValue = 4) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = double(pick(0, maxValue));
    return v;
  }
};

inline std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

inline double norm2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace testsupport
