#pragma once

#include <vector>

#include "mechanism.hpp"

namespace anarchy {

struct DeviationCheck {
  int player = 0;
  EpsCost charge;            // what the player pays under the profile
  int best_alternative = 0;  // path index with the cheapest deviation charge
  EpsCost best_charge;
  bool improves = false;     // best_charge < charge strictly
};

struct EquilibriumReport {
  PathProfile profile;
  bool is_pne = false;
  std::vector<EpsCost> charges;  // per player
  EpsCost social_modified;       // sum of modified edge costs at the final loads
  CostValue social_original;     // same loads, original costs
  std::vector<DeviationCheck> deviations;
};

// Evaluates one profile exactly: per-player charges, cheapest unilateral
// deviations (deviations only shift the deviating player's own charge, since
// a player's payment depends on higher-priority players alone).
EquilibriumReport check_equilibrium(const SpgGame& game, const PenaltyWeights& w,
                                    const std::vector<Path>& paths, const PathProfile& profile,
                                    const std::vector<int>& order);

// Players enter in priority order and pick the charge-minimizing path given
// everyone already placed (ties: lowest path index). The result is always a
// pure Nash equilibrium under the ordered protocol.
EquilibriumReport sequential_equilibrium(const SpgGame& game, const PenaltyWeights& w,
                                         const std::vector<Path>& paths, long n,
                                         const std::vector<int>& order);

struct Enumeration {
  std::vector<EquilibriumReport> equilibria;  // in profile enumeration order
  unsigned long long profiles_checked = 0;
  std::size_t worst = 0;  // index of the costliest equilibrium (first on ties)
};

// Checks every |paths|^n profile. Throws LimitError when that count exceeds
// `cap`. The profile space is partitioned into contiguous index ranges, one
// per worker.
Enumeration enumerate_equilibria(const SpgGame& game, const PenaltyWeights& w,
                                 const std::vector<Path>& paths, long n,
                                 const std::vector<int>& order, unsigned long long cap,
                                 int workers = 1);

struct PoaReport {
  long n = 0;
  long n_hat = 0;
  long delta = 0;  // |n - n_hat|
  unsigned long long profiles_checked = 0;
  std::size_t equilibrium_count = 0;
  EquilibriumReport worst;
  CostValue optimum;
  Rat ratio;  // worst modified social cost (base part) / optimum
  Rat bound;  // min{4(delta+1), 4n}
  bool satisfied = false;
};

// Worst pure Nash equilibrium against the offline optimum, with the
// prediction-error bound it is supposed to respect.
PoaReport price_of_anarchy(const SpgGame& game, const PenaltyWeights& w, long n,
                           const std::vector<int>& order, unsigned long long cap,
                           int workers = 1);

// Identity priority order for n players.
std::vector<int> identity_order(long n);

}  // namespace anarchy
