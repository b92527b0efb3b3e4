#include "game.hpp"

#include <algorithm>

#include "error.hpp"

namespace anarchy {

SpgGame SpgGame::build(SpgTree tree, std::vector<CostTable> tables) {
  SpgGame g;
  g.tree = std::move(tree);
  g.tables = std::move(tables);
  if (static_cast<int>(g.tables.size()) != g.tree.leaf_count())
    throw InputError("expected " + std::to_string(g.tree.leaf_count()) + " cost tables, got " +
                     std::to_string(g.tables.size()));

  g.q_max = g.tables.front().l_max();
  for (const auto& t : g.tables) g.q_max = std::min(g.q_max, t.l_max());

  g.opt = solve_optimum(g.tree, g.tables, g.q_max);
  Normalization norm = normalize(g.tables, g.opt);
  g.opt_norm = std::move(norm.opt);
  g.norm_factor = norm.factor;
  g.scale = thresholds(g.opt_norm);
  return g;
}

CostValue SpgGame::cost_of_loads(const LoadProfile& loads) const {
  if (loads.size() != tables.size())
    throw InputError("load profile size does not match the number of edges");
  CostValue total;
  for (std::size_t e = 0; e < tables.size(); ++e)
    total += tables[e].eval(loads[e]);
  return total;
}

}  // namespace anarchy
