#pragma once

#include <vector>

#include "cost.hpp"
#include "spg.hpp"

namespace anarchy {

// Optimal allocations for every player count q = 0..q_max.
// cost[q] is the cheapest total cost of routing q players, loads[q] the
// edge loads of one allocation achieving it (deterministic witness: at a
// parallel split, ties go to the larger left-child share).
struct OptimumProfile {
  std::vector<CostValue> cost;
  std::vector<LoadProfile> loads;

  long q_max() const { return static_cast<long>(cost.size()) - 1; }
};

// Bottom-up dynamic program over the decomposition tree: series components
// carry the full load on both children, parallel components minimize over
// integer splits. Tables must cover loads up to q_max on every edge.
OptimumProfile solve_optimum(const SpgTree& g, const std::vector<CostTable>& tables, long q_max);

// Cost scaling that makes the single-player optimum equal 1.
struct Normalization {
  std::vector<CostTable> tables;  // scaled copies
  OptimumProfile opt;             // scaled costs, identical loads
  Rat factor;                     // scaled = original * factor
};

// Throws InputError when the single-player optimum is zero or unbounded
// (no finite-cost routing for even one player).
Normalization normalize(const std::vector<CostTable>& tables, const OptimumProfile& opt);

// Player-count thresholds per cost scale, computed from a normalized
// optimum profile: max_players[0] is the largest q whose optimum costs
// nothing, and for k >= 1 max_players[k] is the largest q with cost below
// 2^k. The ladder stops once it reaches the largest q with finite cost, so
// max_players is non-decreasing and its last entry is that q.
struct ScaleThresholds {
  std::vector<long> max_players;

  long k_max() const { return static_cast<long>(max_players.size()) - 1; }
};

ScaleThresholds thresholds(const OptimumProfile& opt_norm);

}  // namespace anarchy
