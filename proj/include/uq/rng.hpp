#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "uq/common.hpp"

namespace uq {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Derives a per-stage seed from a master seed. Distinct (stage, index)
/// pairs map to distinct seeds with overwhelming probability.
inline uint64_t derive_seed(uint64_t master_seed, std::string_view stage_name, uint64_t index) {
  require(!stage_name.empty(), "stage_name must be non-empty");
  uint64_t h = splitmix64(master_seed ^ fnv1a64(stage_name));
  return splitmix64(h ^ splitmix64(index ^ 0xd1b54a32d192ed03ULL));
}

/// Deterministic random stream. The mt19937_64 engine is pinned by the
/// standard; all draw shapes are implemented here rather than with
/// std::*_distribution so that output is identical across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::size_t uniform_index(std::size_t n) {
    require(n > 0, "uniform_index: n must be positive");
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Inverse-CDF draw from an unnormalized non-negative weight vector.
  std::size_t categorical(std::span<const double> probs) {
    require(!probs.empty(), "categorical: empty distribution");
    double total = 0.0;
    for (double p : probs) total += p;
    double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return i;
    }
    return probs.size() - 1;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace uq
