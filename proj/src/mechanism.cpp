#include "mechanism.hpp"

#include <algorithm>

#include "error.hpp"

namespace anarchy {

EpsCost EpsCost::operator+(const EpsCost& o) const {
  if (is_unbounded() || o.is_unbounded()) return unbounded();
  return EpsCost(base + o.base, eps_coeff + o.eps_coeff);
}

bool EpsCost::operator==(const EpsCost& o) const {
  if (is_unbounded() || o.is_unbounded()) return is_unbounded() == o.is_unbounded();
  return base == o.base && eps_coeff == o.eps_coeff;
}

std::strong_ordering EpsCost::operator<=>(const EpsCost& o) const {
  auto c = base <=> o.base;
  if (c != std::strong_ordering::equal) return c;
  if (is_unbounded()) return std::strong_ordering::equal;
  if (eps_coeff < o.eps_coeff) return std::strong_ordering::less;
  if (eps_coeff > o.eps_coeff) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

EpsCost EpsCost::scaled(const Rat& factor) const {
  if (factor < 0) throw InputError("eps-cost scale factor must be non-negative");
  if (is_unbounded()) return unbounded();
  if (factor == 0) return EpsCost(CostValue(0), 0);
  return EpsCost(base.scaled(factor), eps_coeff * factor);
}

std::string EpsCost::str() const {
  if (is_unbounded()) return "inf";
  if (eps_coeff == 0) return base.str();
  return base.str() + " + " + format_rational(eps_coeff) + "*eps";
}

EpsCost max(const EpsCost& a, const EpsCost& b) { return a < b ? b : a; }

PenaltyWeights build_penalty_weights(const SpgGame& game, long n_hat) {
  if (n_hat < 1 || n_hat > game.q_max)
    throw InputError("predicted player count " + std::to_string(n_hat) +
                     " outside table range 1.." + std::to_string(game.q_max));

  PenaltyWeights w;
  w.n_hat = n_hat;
  w.threshold_loads = online_run(game, n_hat).loads;

  // Original cost of the predicted allocation, per component.
  int nodes = game.tree.node_count();
  std::vector<CostValue> alloc_cost(static_cast<std::size_t>(nodes));
  for (int idx = nodes - 1; idx >= 0; --idx) {
    const SpgNode& nd = game.tree.node(idx);
    if (nd.kind == SpgNode::Kind::edge)
      alloc_cost[static_cast<std::size_t>(idx)] = game.tables[static_cast<std::size_t>(nd.leaf)]
          .eval(w.threshold_loads[static_cast<std::size_t>(nd.leaf)]);
    else
      alloc_cost[static_cast<std::size_t>(idx)] = alloc_cost[static_cast<std::size_t>(nd.left)] +
                                                  alloc_cost[static_cast<std::size_t>(nd.right)];
  }
  if (alloc_cost[SpgTree::root()].is_unbounded())
    throw InputError("predicted allocation has unbounded cost");

  w.component_weight.assign(static_cast<std::size_t>(nodes), EpsCost());
  w.component_weight[SpgTree::root()] = EpsCost(alloc_cost[SpgTree::root()], 1);
  for (int idx = 0; idx < nodes; ++idx) {
    const SpgNode& nd = game.tree.node(idx);
    if (nd.kind == SpgNode::Kind::edge) continue;
    const EpsCost& mine = w.component_weight[static_cast<std::size_t>(idx)];
    if (nd.kind == SpgNode::Kind::parallel) {
      w.component_weight[static_cast<std::size_t>(nd.left)] = mine;
      w.component_weight[static_cast<std::size_t>(nd.right)] = mine;
    } else {
      const CostValue& total = alloc_cost[static_cast<std::size_t>(idx)];
      if (total == CostValue(0)) {
        // Nothing to be proportional to; split the weight evenly.
        w.component_weight[static_cast<std::size_t>(nd.left)] = mine.scaled(Rat(1, 2));
        w.component_weight[static_cast<std::size_t>(nd.right)] = mine.scaled(Rat(1, 2));
      } else {
        Rat left_share = alloc_cost[static_cast<std::size_t>(nd.left)].value() / total.value();
        w.component_weight[static_cast<std::size_t>(nd.left)] = mine.scaled(left_share);
        w.component_weight[static_cast<std::size_t>(nd.right)] = mine.scaled(1 - left_share);
      }
    }
  }

  int leaves = game.tree.leaf_count();
  w.modified.assign(static_cast<std::size_t>(leaves), {});
  w.marginal.assign(static_cast<std::size_t>(leaves), {});
  for (int leaf = 0; leaf < leaves; ++leaf) {
    const CostTable& table = game.tables[static_cast<std::size_t>(leaf)];
    const EpsCost& weight = w.edge_weight(game.tree, leaf);
    long threshold = w.threshold_loads[static_cast<std::size_t>(leaf)];
    auto& chat = w.modified[static_cast<std::size_t>(leaf)];
    chat.reserve(static_cast<std::size_t>(game.q_max) + 1);
    for (long l = 0; l <= game.q_max; ++l) {
      EpsCost original{table.eval(l)};
      if (l <= threshold)
        chat.push_back(std::move(original));
      else
        chat.push_back(max(chat.back() + weight, original));
    }
    auto& marg = w.marginal[static_cast<std::size_t>(leaf)];
    marg.reserve(static_cast<std::size_t>(game.q_max));
    for (long l = 0; l < game.q_max; ++l) {
      const EpsCost& hi = chat[static_cast<std::size_t>(l) + 1];
      const EpsCost& lo = chat[static_cast<std::size_t>(l)];
      if (hi.is_unbounded())
        marg.push_back(EpsCost::unbounded());
      else
        marg.push_back(EpsCost(Rat(hi.base.value() - lo.base.value()),
                               Rat(hi.eps_coeff - lo.eps_coeff)));
    }
  }
  return w;
}

const EpsCost& modified_cost(const PenaltyWeights& w, int leaf, long load) {
  if (leaf < 0 || static_cast<std::size_t>(leaf) >= w.modified.size())
    throw InputError("edge index out of range");
  const auto& chat = w.modified[static_cast<std::size_t>(leaf)];
  if (load < 0 || static_cast<std::size_t>(load) >= chat.size())
    throw InputError("load " + std::to_string(load) + " outside modified table range");
  return chat[static_cast<std::size_t>(load)];
}

EpsCost path_marginal(const PenaltyWeights& w, const Path& path, const LoadProfile& prior) {
  EpsCost total;
  for (int leaf : path) {
    long l = prior[static_cast<std::size_t>(leaf)];
    const auto& marg = w.marginal[static_cast<std::size_t>(leaf)];
    if (static_cast<std::size_t>(l) >= marg.size())
      throw InputError("load beyond table range on edge index " + std::to_string(leaf));
    total += marg[static_cast<std::size_t>(l)];
  }
  return total;
}

EpsCost modified_total(const PenaltyWeights& w, const LoadProfile& loads) {
  EpsCost total;
  for (std::size_t e = 0; e < loads.size(); ++e)
    total += modified_cost(w, static_cast<int>(e), loads[e]);
  return total;
}

EpsCost player_charge(const PenaltyWeights& w, const std::vector<Path>& paths,
                      const PathProfile& profile, const std::vector<int>& order, int player) {
  if (player < 0 || static_cast<std::size_t>(player) >= profile.size())
    throw InputError("player index out of range");
  LoadProfile prior(w.threshold_loads.size(), 0);
  for (int predecessor : order) {
    if (predecessor == player) break;
    for (int leaf : paths[static_cast<std::size_t>(profile[static_cast<std::size_t>(predecessor)])])
      ++prior[static_cast<std::size_t>(leaf)];
  }
  return path_marginal(w, paths[static_cast<std::size_t>(profile[static_cast<std::size_t>(player)])], prior);
}

}  // namespace anarchy
