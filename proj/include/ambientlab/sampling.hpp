#pragma once

#include "ambientlab/expression.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace ambientlab {

// Deterministic rational sample points (std::mt19937_64 is bit-stable across
// platforms). Coordinates are drawn from [-2, 2] on a 1/16 grid; call sites
// add rejection rules (|z| >= 1/10, t away from 0).
class SamplePointGen {
 public:
  explicit SamplePointGen(uint64_t seed) : rng_(seed) {}

  Rational rational_in_range() {
    std::uniform_int_distribution<int> num(-32, 32);
    return Rational(num(rng_), 16);
  }

  std::map<VarId, Rational> point(const std::vector<VarId>& coords) {
    std::map<VarId, Rational> p;
    for (VarId v : coords) p[v] = rational_in_range();
    return p;
  }

  // Rejects points with x1^2 + x2^2 < 2/100, i.e. |z| < 1/10 in the complex
  // chart z = (x1 + i x2)/sqrt(2).
  std::map<VarId, Rational> point_away_from_z_axis(const std::vector<VarId>& coords, VarId x1,
                                                   VarId x2) {
    while (true) {
      auto p = point(coords);
      if (p[x1] * p[x1] + p[x2] * p[x2] >= Rational(2, 100)) return p;
    }
  }

  // Rejects points with |coords[slot]| < 1/10 (used for the ambient t).
  std::map<VarId, Rational> point_with_unit_scale(const std::vector<VarId>& coords, VarId away) {
    while (true) {
      auto p = point(coords);
      if (p[away] * p[away] >= Rational(1, 100)) return p;
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ambientlab
