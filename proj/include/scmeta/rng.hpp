#pragma once

#include "scmeta/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace scmeta {

// Deterministic random source. The raw mt19937_64 stream is mapped to
// doubles by fixed arithmetic (never std::uniform_real_distribution, whose
// output is implementation-defined), so seeded draws are identical across
// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1): 53 random bits scaled by 2^-53.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1], safe as a log argument.
  double uniform01_open_at_zero() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; two fresh uniforms per draw.
  double normal() {
    const double u1 = uniform01_open_at_zero();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  // Uniform point in the centered Euclidean ball of the given radius.
  Vec in_ball(int d, double radius) {
    Vec dir(d);
    double n = 0.0;
    do {
      for (int i = 0; i < d; ++i) dir[i] = normal();
      n = dir.norm();
    } while (!(n > 0.0));
    const double r =
        radius * std::pow(uniform01(), 1.0 / static_cast<double>(d));
    return (r / n) * dir;
  }

  // s distinct indices from {0..n-1} by partial Fisher-Yates, sorted.
  std::vector<int> subset(int n, int s);

 private:
  std::mt19937_64 gen_;
};

inline std::vector<int> Rng::subset(int n, int s) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < s; ++i) {
    const int j = i + static_cast<int>(gen_() % static_cast<std::uint64_t>(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(s);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace scmeta
