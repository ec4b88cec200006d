#pragma once

// Reproducible random streams. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; doubles are formed from the top 53
// bits directly rather than through std::uniform_real_distribution (whose
// algorithm is implementation-defined), so samples are identical on every
// conforming platform. Independent streams are derived with std::seed_seq
// from a master seed plus integer identifiers.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <vector>

#include "pdfam/geometry.hpp"

namespace pdfam {

using Rng = std::mt19937_64;

inline Rng derive_stream(std::uint64_t master, std::initializer_list<std::uint64_t> ids = {}) {
  std::vector<std::uint32_t> words;
  words.push_back(static_cast<std::uint32_t>(master));
  words.push_back(static_cast<std::uint32_t>(master >> 32));
  for (std::uint64_t id : ids) {
    words.push_back(static_cast<std::uint32_t>(id));
    words.push_back(static_cast<std::uint32_t>(id >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

/// Uniform on [0, 1).
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Standard normal by Box-Muller.
inline double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Uniformly random unit vector orthogonal to the unit vector `axis`.
/// Requires axis.size() >= 2.
inline Point random_orthogonal_unit(Rng& rng, const Point& axis) {
  for (;;) {
    Point g(axis.size());
    for (double& x : g) x = standard_normal(rng);
    const double along = dot(g, axis);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= along * axis[i];
    const double n = norm(g);
    if (n > 1e-9) {
      for (double& x : g) x /= n;
      return g;
    }
  }
}

}  // namespace pdfam
