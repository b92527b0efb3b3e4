#pragma once

#include <vector>

#include "game.hpp"

namespace anarchy {

// State of the online allocator after some players have arrived.
struct OnlineState {
  long assigned = 0;
  LoadProfile loads;               // per edge
  std::vector<Path> player_paths;  // player q (1-based) took player_paths[q-1]
  std::vector<int> levels;         // levels[q-1] = scale level given to player q
};

OnlineState online_start(const SpgGame& game);

// Admits the next player: the smallest scale level k whose optimal loads at
// max_players[k] leave a residual path, assigned to the leftmost such path.
// Returns k. Throws LimitError when no level admits the player (every path
// is saturated, which only happens when the instance runs out of finite
// capacity).
int online_step(const SpgGame& game, OnlineState& state);

// Runs n arrivals from scratch. n must not exceed the table range.
OnlineState online_run(const SpgGame& game, long n);

struct CompetitiveReport {
  long n = 0;
  CostValue online_cost;   // original units
  CostValue optimum_cost;  // original units
  Rat ratio;
  bool within_four = false;
};

// Compares the online allocation against the offline optimum for n players.
// Requires a finite, positive optimum.
CompetitiveReport competitive_check(const SpgGame& game, long n);

}  // namespace anarchy
