#pragma once

#include <compare>
#include <string>
#include <vector>

#include "game.hpp"
#include "online.hpp"

namespace anarchy {

// Cost with a formal infinitesimal: base + eps_coeff * eps, ordered
// lexicographically (any positive multiple of eps loses to any positive
// rational difference in the base). The eps term is what lets penalties sit
// strictly above every real cost without disturbing finite comparisons.
// An unbounded base swallows the eps part.
struct EpsCost {
  CostValue base;
  Rat eps_coeff = 0;

  EpsCost() = default;
  EpsCost(CostValue b, Rat e) : base(std::move(b)), eps_coeff(std::move(e)) {
    if (base.is_unbounded()) eps_coeff = 0;
  }
  explicit EpsCost(CostValue b) : base(std::move(b)) {}

  static EpsCost unbounded() { return EpsCost(CostValue::unbounded()); }

  bool is_unbounded() const { return base.is_unbounded(); }

  EpsCost operator+(const EpsCost& o) const;
  EpsCost& operator+=(const EpsCost& o) { return *this = *this + o; }
  bool operator==(const EpsCost& o) const;
  std::strong_ordering operator<=>(const EpsCost& o) const;

  // Multiplication by a non-negative rational (series weight splitting).
  EpsCost scaled(const Rat& factor) const;

  std::string str() const;  // "11", "11 + 3/4*eps", "0 + 1*eps", "inf"
};

EpsCost max(const EpsCost& a, const EpsCost& b);

// The prediction-driven overcharging scheme. Weights live on decomposition
// components: the root gets the cost of the online allocation for the
// predicted player count plus eps, parallel children inherit their parent's
// weight unchanged, series children split it in proportion to their share of
// the allocation's cost (equal split when that cost is zero). Each edge then
// keeps its original cost up to its threshold load and climbs by at least
// its weight for every player beyond it:
//   chat_e(l) = c_e(l)                              l <= threshold_e
//   chat_e(l) = max(chat_e(l-1) + W_e, c_e(l))      l >  threshold_e
struct PenaltyWeights {
  long n_hat = 0;
  LoadProfile threshold_loads;                 // per edge: online loads at n_hat
  std::vector<EpsCost> component_weight;       // per tree node
  std::vector<std::vector<EpsCost>> modified;  // per edge: chat(0..q_max)
  std::vector<std::vector<EpsCost>> marginal;  // per edge: chat(l+1) - chat(l)

  const EpsCost& edge_weight(const SpgTree& g, int leaf) const {
    return component_weight[static_cast<std::size_t>(g.leaf_node(leaf))];
  }
};

PenaltyWeights build_penalty_weights(const SpgGame& game, long n_hat);

// chat_e(load), bounds-checked.
const EpsCost& modified_cost(const PenaltyWeights& w, int leaf, long load);

// Marginal modified cost of taking `path` on top of the loads in `prior`.
// Once an edge has exhausted its finite range the marginal is unbounded.
EpsCost path_marginal(const PenaltyWeights& w, const Path& path, const LoadProfile& prior);

// Total modified cost of a load profile.
EpsCost modified_total(const PenaltyWeights& w, const LoadProfile& loads);

// Strategy profile: player i takes paths[profile[i]] of the enumerated path
// list. Priorities: order[r] is the player at rank r (rank 0 pays first).
using PathProfile = std::vector<int>;

// What player `player` pays under the ordered protocol: the marginal
// modified cost of each edge on their path, given the loads of all
// higher-priority players.
EpsCost player_charge(const PenaltyWeights& w, const std::vector<Path>& paths,
                      const PathProfile& profile, const std::vector<int>& order, int player);

}  // namespace anarchy
