#pragma once

#include <vector>

#include "rational.hpp"

namespace anarchy {

// The fixed four-vertex Braess-style network that defeats every online
// allocator. Three source-sink paths exist:
//   path 0: s -> a -> b -> t
//   path 1: s -> a -> t
//   path 2: s -> b -> t
// with two-level edge costs (single user, two users):
//   (s,a): 1, k^2    (s,b): k, k    (a,b): 1, 1    (a,t): k, k    (b,t): 1, k^2
// A deterministic online algorithm is a first-player path plus a response
// for the second arrival; the adversary stops after one player or sends the
// second, whichever looks worse for the algorithm.
struct BraessStrategy {
  int first_path = 0;
  int second_path = 0;
  Rat cost_one;    // algorithm's cost if the sequence stops after one player
  Rat cost_two;    // cost with both players placed
  Rat ratio_one;   // vs the one-player optimum
  Rat ratio_two;   // vs the two-player optimum
  Rat worst_ratio; // max of the two
};

struct BraessReport {
  long k = 0;
  Rat optimum_one;
  Rat optimum_two;
  std::vector<BraessStrategy> strategies;  // ordered by (first_path, second_path)
  std::size_t best_index = 0;              // strategy minimizing worst_ratio
  Rat best_ratio;
  bool four_competitive_possible = false;  // best_ratio <= 4
};

BraessReport braess_negative_test(long k);

}  // namespace anarchy
