#pragma once

#include <vector>

#include "optimum.hpp"
#include "spg.hpp"

namespace anarchy {

// One series-parallel congestion instance with everything the allocator and
// the mechanism need precomputed: the optimum profile in original units, the
// normalized copy (single-player optimum scaled to 1) and the scale
// thresholds derived from it.
struct SpgGame {
  SpgTree tree;
  std::vector<CostTable> tables;  // original units
  long q_max = 0;                 // min table length; loads never exceed this

  OptimumProfile opt;       // original units
  OptimumProfile opt_norm;  // scaled
  Rat norm_factor;          // scaled = original * factor
  ScaleThresholds scale;

  static SpgGame build(SpgTree tree, std::vector<CostTable> tables);

  // Total original cost of an edge-load profile.
  CostValue cost_of_loads(const LoadProfile& loads) const;
};

}  // namespace anarchy
