#pragma once

#include <string>
#include <vector>

#include "generate.hpp"

namespace anarchy {

// One experiment result. For series-parallel rows `delta` is |n - n_hat|
// and distance_error stays 0; multicast rows carry the assignment's (D, δ).
// ratio and bound are both normalized by the optimum, so
// bound_satisfied <=> ratio <= bound, exactly, as rationals.
struct ExperimentRow {
  std::string instance_id;
  long n = 0;
  long n_hat = 0;
  Rat distance_error;
  long delta = 0;
  CostValue pne_cost;
  CostValue optimum;
  Rat ratio;
  Rat bound;
  bool bound_satisfied = false;
  long runtime_ms = 0;
  std::string status = "ok";  // ok | skipped-exhaustive | flagged-log
};

// Header plus one line per row, in the field order above.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

bool rows_all_satisfied(const std::vector<ExperimentRow>& rows);

// Worker count: `requested` if positive, else the ANARCHY_WORKERS
// environment variable, else the hardware concurrency (at least 1).
int resolve_workers(int requested);

struct SpgCampaignParams {
  long seed_lo = 1;
  long seed_hi = 200;
  SpgGenParams gen;  // per-instance seed comes from the campaign range
  unsigned long long enum_cap = 2000000;
  int workers = 0;
};

// Generates one instance per seed, builds the penalty mechanism for the
// instance's prediction and measures the worst pure Nash equilibrium against
// min{4(δ+1), 4n}. When the profile space exceeds enum_cap the row falls
// back to the sequential equilibrium and is marked "skipped-exhaustive".
std::vector<ExperimentRow> run_spg_campaign(const SpgCampaignParams& params);

struct McCampaignParams {
  long seed_lo = 1;
  long seed_hi = 200;
  McGenParams gen;  // seed and radius come from the campaign
  std::vector<int> radii{0, 1, 2};
  int workers = 0;
};

// One row per (seed, radius). Known-set instances are judged against
// 6D + 4 OPT; unknown-set instances against the error-robust bound of the
// best assignment or the player-robust bound, whichever is smaller. Rows
// that only pass with the 4x log constant are marked "flagged-log".
std::vector<ExperimentRow> run_multicast_campaign(const McCampaignParams& params);

}  // namespace anarchy
