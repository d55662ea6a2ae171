#pragma once

#include <cstddef>
#include <vector>

#include "tlfreq/gfrf.hpp"

namespace tlfreq {

/// Length-k sequences of positive integers summing to n, lexicographic.
/// Zero parts are omitted: with inner H_0 = 0 they contribute nothing.
std::vector<std::vector<std::size_t>> compositions(std::size_t n, std::size_t k);

/// Order-wise sum; H_0 adds.
Gfrf sum_gfrf(const Gfrf& a, const Gfrf& b);

/// GFRF of outer o inner by the composition theorem, in closed term form.
/// Outer must be a delta-train (unity factors only) and inner must have
/// H_0 = 0. Orders above max_order (0 = no limit) are not generated. The
/// result is merged: identical (delays, factors) terms are summed.
Gfrf compose_gfrf(const Gfrf& outer, const Gfrf& inner, std::size_t max_order = 0);

struct PruneResult {
  Gfrf gfrf;
  double dropped_mass = 0.0;   // sum of |coeff| of removed terms
  std::size_t merged = 0;      // terms folded into an identical one
  std::size_t dropped = 0;
};

/// Merges identical terms, then drops those with |coeff| < threshold.
PruneResult prune_gfrf(const Gfrf& gfrf, double threshold);

}  // namespace tlfreq
