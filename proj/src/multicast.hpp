#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace anarchy {

// Multicast network formation instance: an undirected connected graph with
// positive rational edge weights, a source, the terminal set R (players who
// must connect to the source) and the predicted terminal set H. A known-set
// instance additionally carries the assignment eta saying which predicted
// point stands for which terminal.
struct MulticastInstance {
  std::vector<long> vertex_ids;  // sorted original labels; vertex = position here

  struct Edge {
    int u, v;  // u < v
    Rat weight;
  };
  std::vector<Edge> edges;

  int source = 0;
  std::vector<int> terminals;  // sorted, source excluded
  std::vector<int> predicted;  // sorted, source excluded
  // Aligned with `terminals`; entries are predicted vertices or the source.
  std::optional<std::vector<int>> eta;

  int vertex_count() const { return static_cast<int>(vertex_ids.size()); }
  long label(int v) const { return vertex_ids[static_cast<std::size_t>(v)]; }
};

// All-pairs shortest distances, plus deterministic shortest-path
// reconstruction (at every step the smallest-numbered vertex that still lies
// on a shortest path is taken).
struct Metric {
  int n = 0;
  std::vector<std::vector<Rat>> dist;
  std::vector<std::vector<std::optional<Rat>>> adjacency;  // cheapest direct edge

  std::vector<int> path(int from, int to) const;
};

// Throws InputError when the graph is disconnected.
Metric metric_closure(const MulticastInstance& inst);

// Priority order of all vertices. A minimum spanning tree over
// {source} ∪ H in the metric closure is walked depth-first from the source
// (children by ascending vertex), ranking the predicted points; every vertex
// anchors to its nearest predicted point (ties to the smaller vertex; eta
// overrides the anchor for terminals of known-set instances) and vertices
// sort by (anchor rank, vertex). The source always comes first.
struct PriorityOrder {
  std::vector<int> prediction_walk;  // source first, then predicted points in visit order
  Rat prediction_mst_cost;           // MST({source} ∪ H) weight in the metric closure
  std::vector<int> anchor;           // per vertex
  std::vector<int> anchor_rank;      // per vertex: position of anchor in prediction_walk
  std::vector<int> vertex_order;     // every vertex
  std::vector<int> player_sequence;  // terminals, in vertex_order order
};

PriorityOrder prediction_order(const MulticastInstance& inst, const Metric& metric);

// Greedy sequential play: each player, in priority order, connects their
// terminal to the already-claimed component through a cheapest path (claimed
// edges are free), paying for the newly claimed edges. Under first-in-
// priority-pays-all cost sharing this is a pure Nash equilibrium.
struct GreedyOutcome {
  std::vector<std::vector<int>> paths;  // per player: vertex sequence source..terminal
  std::vector<Rat> shares;              // per player
  Rat total_cost;
  std::vector<std::pair<int, int>> used_edges;  // claimed edges, sorted
};

GreedyOutcome greedy_equilibrium(const MulticastInstance& inst, const Metric& metric,
                                 const PriorityOrder& order);

// Re-derives each player's best-response cost against the claims of the
// players before them and compares with the recorded share. True when no
// player can connect more cheaply given the final profile.
bool verify_greedy(const MulticastInstance& inst, const Metric& metric,
                   const PriorityOrder& order, const GreedyOutcome& outcome);

// First-in-priority-pays-all shares for arbitrary per-player paths (vertex
// sequences from the source to each player's terminal).
std::vector<Rat> ordered_shares(const MulticastInstance& inst, const PriorityOrder& order,
                                const std::vector<std::vector<int>>& paths);

// Exact minimum Steiner tree weight connecting `targets`, computed over the
// metric closure by the classic subset dynamic program. Throws LimitError
// beyond 13 distinct targets.
Rat steiner_optimum(const Metric& metric, std::vector<int> targets);

struct PredictionError {
  Rat distance;                  // D: sum of d(t, eta(t)) over matched terminals
  long unmatched_terminals = 0;  // terminals left out of the assignment
  long unused_predictions = 0;   // predicted points no terminal maps to

  long total() const { return unmatched_terminals + unused_predictions; }
};

// Error of a partial assignment, aligned with inst.terminals; entries are
// predicted vertices, the source, or -1 for unmatched.
PredictionError prediction_error(const MulticastInstance& inst, const Metric& metric,
                                 const std::vector<int>& assignment);

// 0 for x <= 1, otherwise ceil(log2 x) + 1.
long logterm(long x);

struct BestError {
  std::vector<int> assignment;  // -1 = unmatched
  PredictionError error;
  Rat objective;  // 6 D / OPT + logterm(δ)
  Rat optimum;    // Steiner optimum of {source} ∪ R
};

// Minimizes 6 D / OPT + logterm(δ) over all assignments that match each
// terminal to at most one predicted point (injectively) or leave it out.
// Exact subset dynamic program over used predicted points.
BestError best_prediction_error(const MulticastInstance& inst, const Metric& metric);

struct BoundRow {
  std::string name;  // "known-set", "error-robust" or "player-robust"
  Rat lhs;           // equilibrium cost
  Rat rhs;
  bool holds = false;
  // The log-based rows get a fallback with the log term scaled by 4, for
  // investigating constant-factor slack separately from real violations.
  bool log_flagged = false;
  Rat weak_rhs;
  bool weak_holds = false;
};

// Guarantees the mechanism should meet, judged for one assignment:
//   known-set:      cost <= 6 D + 4 OPT      (total assignments only)
//   error-robust:   cost <= 6 D + 4 OPT + (logterm(δ_H) + logterm(δ_R)) OPT
//   player-robust:  cost <= logterm(|R| + 1) OPT   (independent of eta)
// Pass nullopt to get the player-robust row alone.
std::vector<BoundRow> check_bounds(const MulticastInstance& inst, const Metric& metric,
                                   const GreedyOutcome& outcome, const Rat& optimum,
                                   const std::optional<std::vector<int>>& assignment);

}  // namespace anarchy
