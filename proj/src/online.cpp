#include "online.hpp"

#include "error.hpp"

namespace anarchy {

OnlineState online_start(const SpgGame& game) {
  OnlineState st;
  st.loads.assign(static_cast<std::size_t>(game.tree.leaf_count()), 0);
  return st;
}

int online_step(const SpgGame& game, OnlineState& state) {
  for (long k = 0; k <= game.scale.k_max(); ++k) {
    long cap_players = game.scale.max_players[static_cast<std::size_t>(k)];
    const LoadProfile& caps = game.opt_norm.loads[static_cast<std::size_t>(cap_players)];
    if (auto path = find_residual_path(game.tree, state.loads, caps)) {
      for (int leaf : *path) ++state.loads[static_cast<std::size_t>(leaf)];
      state.player_paths.push_back(std::move(*path));
      state.levels.push_back(static_cast<int>(k));
      ++state.assigned;
      return static_cast<int>(k);
    }
  }
  throw LimitError("no scale level admits player " + std::to_string(state.assigned + 1) +
                   ": every path is saturated");
}

OnlineState online_run(const SpgGame& game, long n) {
  if (n < 0 || n > game.q_max)
    throw InputError("player count " + std::to_string(n) + " outside table range 0.." +
                     std::to_string(game.q_max));
  OnlineState st = online_start(game);
  for (long q = 0; q < n; ++q) online_step(game, st);
  return st;
}

CompetitiveReport competitive_check(const SpgGame& game, long n) {
  if (n < 1) throw InputError("competitive check needs at least one player");
  CompetitiveReport rep;
  rep.n = n;
  rep.optimum_cost = game.opt.cost[static_cast<std::size_t>(n)];
  if (rep.optimum_cost.is_unbounded())
    throw InputError("optimum cost is unbounded for " + std::to_string(n) + " players");
  if (rep.optimum_cost == CostValue(0))
    throw InputError("optimum cost is zero for " + std::to_string(n) + " players; ratio undefined");

  OnlineState st = online_run(game, n);
  rep.online_cost = game.cost_of_loads(st.loads);
  if (rep.online_cost.is_unbounded())
    throw InputError("online allocation has unbounded cost");  // cannot happen on admitted players
  rep.ratio = rep.online_cost.value() / rep.optimum_cost.value();
  rep.within_four = rep.ratio <= 4;
  return rep;
}

}  // namespace anarchy
