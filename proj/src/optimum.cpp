#include "optimum.hpp"

#include <algorithm>

#include "error.hpp"

namespace anarchy {

OptimumProfile solve_optimum(const SpgTree& g, const std::vector<CostTable>& tables, long q_max) {
  if (static_cast<int>(tables.size()) != g.leaf_count())
    throw InputError("expected " + std::to_string(g.leaf_count()) + " cost tables, got " +
                     std::to_string(tables.size()));
  if (q_max < 1) throw InputError("q_max must be at least 1");
  for (int leaf = 0; leaf < g.leaf_count(); ++leaf)
    if (tables[static_cast<std::size_t>(leaf)].l_max() < q_max)
      throw InputError("cost table for edge \"" + g.leaf_id(leaf) + "\" only covers loads up to " +
                       std::to_string(tables[static_cast<std::size_t>(leaf)].l_max()) +
                       ", need " + std::to_string(q_max));

  auto nq = static_cast<std::size_t>(q_max) + 1;
  int nodes = g.node_count();
  std::vector<std::vector<CostValue>> best(static_cast<std::size_t>(nodes),
                                           std::vector<CostValue>(nq));
  // Parallel nodes remember the left-child share that realized each optimum.
  std::vector<std::vector<long>> split(static_cast<std::size_t>(nodes));

  for (int idx = nodes - 1; idx >= 0; --idx) {
    const SpgNode& nd = g.node(idx);
    auto& mine = best[static_cast<std::size_t>(idx)];
    switch (nd.kind) {
      case SpgNode::Kind::edge: {
        const CostTable& t = tables[static_cast<std::size_t>(nd.leaf)];
        for (long q = 0; q <= q_max; ++q) mine[static_cast<std::size_t>(q)] = t.eval(q);
        break;
      }
      case SpgNode::Kind::series: {
        const auto& l = best[static_cast<std::size_t>(nd.left)];
        const auto& r = best[static_cast<std::size_t>(nd.right)];
        for (std::size_t q = 0; q < nq; ++q) mine[q] = l[q] + r[q];
        break;
      }
      case SpgNode::Kind::parallel: {
        const auto& l = best[static_cast<std::size_t>(nd.left)];
        const auto& r = best[static_cast<std::size_t>(nd.right)];
        auto& sp = split[static_cast<std::size_t>(idx)];
        sp.assign(nq, 0);
        for (long q = 0; q <= q_max; ++q) {
          CostValue winner;
          long winner_share = -1;
          // Scan shares from the largest left-child load downward; a strict
          // improvement is required to switch, so ties resolve to the larger
          // left share.
          for (long s = q; s >= 0; --s) {
            CostValue candidate = l[static_cast<std::size_t>(s)] + r[static_cast<std::size_t>(q - s)];
            if (winner_share < 0 || candidate < winner) {
              winner = candidate;
              winner_share = s;
            }
          }
          mine[static_cast<std::size_t>(q)] = winner;
          sp[static_cast<std::size_t>(q)] = winner_share;
        }
        break;
      }
    }
  }

  OptimumProfile out;
  out.cost = best[SpgTree::root()];
  out.loads.assign(nq, LoadProfile());
  for (long q = 0; q <= q_max; ++q) {
    LoadProfile lp(static_cast<std::size_t>(g.leaf_count()), 0);
    auto place = [&](auto&& self, int idx, long want) -> void {
      const SpgNode& nd = g.node(idx);
      switch (nd.kind) {
        case SpgNode::Kind::edge:
          lp[static_cast<std::size_t>(nd.leaf)] = want;
          break;
        case SpgNode::Kind::series:
          self(self, nd.left, want);
          self(self, nd.right, want);
          break;
        case SpgNode::Kind::parallel: {
          long s = split[static_cast<std::size_t>(idx)][static_cast<std::size_t>(want)];
          self(self, nd.left, s);
          self(self, nd.right, want - s);
          break;
        }
      }
    };
    place(place, SpgTree::root(), q);
    out.loads[static_cast<std::size_t>(q)] = std::move(lp);
  }
  return out;
}

Normalization normalize(const std::vector<CostTable>& tables, const OptimumProfile& opt) {
  if (opt.q_max() < 1) throw InputError("optimum profile does not cover one player");
  const CostValue& one = opt.cost[1];
  if (one.is_unbounded())
    throw InputError("cannot normalize: the single-player optimum is unbounded");
  if (one == CostValue(0))
    throw InputError("cannot normalize: the single-player optimum is zero");

  Normalization out;
  out.factor = Rat(1) / one.value();
  out.tables.reserve(tables.size());
  for (const auto& t : tables) out.tables.push_back(t.scaled(out.factor));
  out.opt.loads = opt.loads;
  out.opt.cost.reserve(opt.cost.size());
  for (const auto& c : opt.cost) out.opt.cost.push_back(c.scaled(out.factor));
  return out;
}

ScaleThresholds thresholds(const OptimumProfile& opt_norm) {
  const auto& cost = opt_norm.cost;
  long q_top = 0;
  for (long q = opt_norm.q_max(); q >= 0; --q)
    if (!cost[static_cast<std::size_t>(q)].is_unbounded()) {
      q_top = q;
      break;
    }

  ScaleThresholds out;
  long zero_top = 0;
  while (zero_top < q_top && cost[static_cast<std::size_t>(zero_top) + 1] == CostValue(0))
    ++zero_top;
  out.max_players.push_back(zero_top);

  for (unsigned k = 1; out.max_players.back() < q_top; ++k) {
    CostValue limit{pow2(k)};
    long n_k = 0;
    for (long q = q_top; q >= 0; --q)
      if (cost[static_cast<std::size_t>(q)] < limit) {
        n_k = q;
        break;
      }
    out.max_players.push_back(n_k);
  }
  return out;
}

}  // namespace anarchy
