#pragma once

// Seeded point panels. The generator and the mapping to [0, 1) are fixed so that a seed gives
// the same points on every platform.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "polyclark/core.hpp"

namespace polyclark {

class PanelRng {
 public:
  explicit PanelRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// `count` points of the n-dimensional polydisc with every |z_j| <= radius.
inline std::vector<DiscPoint> random_disc_points(std::size_t n, std::size_t count, double radius, std::uint64_t seed) {
  PanelRng rng(seed);
  std::vector<DiscPoint> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Complex> z(n);
    for (auto& c : z) {
      const double r = radius * rng.uniform();
      c = std::polar(r, two_pi * rng.uniform());
    }
    out.emplace_back(std::move(z));
  }
  return out;
}

inline std::vector<std::pair<DiscPoint, DiscPoint>> random_disc_pairs(std::size_t n, std::size_t count, double radius,
                                                                      std::uint64_t seed) {
  const auto pts = random_disc_points(n, 2 * count, radius, seed);
  std::vector<std::pair<DiscPoint, DiscPoint>> out;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(pts[2 * i], pts[2 * i + 1]);
  return out;
}

}  // namespace polyclark
