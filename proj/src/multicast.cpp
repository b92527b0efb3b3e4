#include "multicast.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "error.hpp"

namespace anarchy {

std::vector<int> Metric::path(int from, int to) const {
  std::vector<int> seq{from};
  int cur = from;
  while (cur != to) {
    int next = -1;
    for (int w = 0; w < n; ++w) {
      if (w == cur) continue;
      const auto& direct = adjacency[static_cast<std::size_t>(cur)][static_cast<std::size_t>(w)];
      if (!direct) continue;
      if (*direct + dist[static_cast<std::size_t>(w)][static_cast<std::size_t>(to)] ==
          dist[static_cast<std::size_t>(cur)][static_cast<std::size_t>(to)]) {
        next = w;
        break;  // vertices scanned in ascending order; first hit is smallest
      }
    }
    if (next < 0) throw InputError("metric path reconstruction failed");  // unreachable
    seq.push_back(next);
    cur = next;
  }
  return seq;
}

Metric metric_closure(const MulticastInstance& inst) {
  Metric m;
  m.n = inst.vertex_count();
  auto sn = static_cast<std::size_t>(m.n);
  m.adjacency.assign(sn, std::vector<std::optional<Rat>>(sn));
  for (const auto& e : inst.edges) {
    auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    if (!m.adjacency[u][v] || e.weight < *m.adjacency[u][v]) {
      m.adjacency[u][v] = e.weight;
      m.adjacency[v][u] = e.weight;
    }
  }

  std::vector<std::vector<std::optional<Rat>>> d(sn, std::vector<std::optional<Rat>>(sn));
  for (std::size_t v = 0; v < sn; ++v) d[v][v] = Rat(0);
  for (std::size_t u = 0; u < sn; ++u)
    for (std::size_t v = 0; v < sn; ++v)
      if (m.adjacency[u][v]) d[u][v] = *m.adjacency[u][v];
  for (std::size_t k = 0; k < sn; ++k)
    for (std::size_t u = 0; u < sn; ++u) {
      if (!d[u][k]) continue;
      for (std::size_t v = 0; v < sn; ++v) {
        if (!d[k][v]) continue;
        Rat via = *d[u][k] + *d[k][v];
        if (!d[u][v] || via < *d[u][v]) d[u][v] = via;
      }
    }

  m.dist.assign(sn, std::vector<Rat>(sn));
  for (std::size_t u = 0; u < sn; ++u)
    for (std::size_t v = 0; v < sn; ++v) {
      if (!d[u][v])
        throw InputError("graph is disconnected: no path between vertices " +
                         std::to_string(inst.label(static_cast<int>(u))) + " and " +
                         std::to_string(inst.label(static_cast<int>(v))));
      m.dist[u][v] = *d[u][v];
    }
  return m;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

}  // namespace

PriorityOrder prediction_order(const MulticastInstance& inst, const Metric& metric) {
  PriorityOrder order;

  std::vector<int> points{inst.source};
  for (int h : inst.predicted)
    if (h != inst.source) points.push_back(h);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Kruskal over the metric closure restricted to the predicted points,
  // ties by the smaller endpoint pair.
  struct Candidate {
    Rat w;
    int u, v;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      candidates.push_back({metric.dist[static_cast<std::size_t>(points[i])]
                                       [static_cast<std::size_t>(points[j])],
                            points[i], points[j]});
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.w != b.w) return a.w < b.w;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });

  UnionFind uf(metric.n);
  std::vector<std::vector<int>> tree(static_cast<std::size_t>(metric.n));
  order.prediction_mst_cost = 0;
  for (const auto& c : candidates)
    if (uf.unite(c.u, c.v)) {
      tree[static_cast<std::size_t>(c.u)].push_back(c.v);
      tree[static_cast<std::size_t>(c.v)].push_back(c.u);
      order.prediction_mst_cost += c.w;
    }
  for (auto& kids : tree) std::sort(kids.begin(), kids.end());

  std::vector<bool> visited(static_cast<std::size_t>(metric.n), false);
  auto dfs = [&](auto&& self, int v) -> void {
    visited[static_cast<std::size_t>(v)] = true;
    order.prediction_walk.push_back(v);
    for (int w : tree[static_cast<std::size_t>(v)])
      if (!visited[static_cast<std::size_t>(w)]) self(self, w);
  };
  dfs(dfs, inst.source);

  std::vector<int> rank_of(static_cast<std::size_t>(metric.n), -1);
  for (std::size_t r = 0; r < order.prediction_walk.size(); ++r)
    rank_of[static_cast<std::size_t>(order.prediction_walk[r])] = static_cast<int>(r);

  // Anchor every vertex to its nearest predicted point.
  order.anchor.assign(static_cast<std::size_t>(metric.n), inst.source);
  for (int v = 0; v < metric.n; ++v) {
    int best = points[0];
    for (int p : points)
      if (metric.dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(p)] <
          metric.dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(best)])
        best = p;  // points are ascending, so ties keep the smaller vertex
    order.anchor[static_cast<std::size_t>(v)] = best;
  }
  if (inst.eta) {
    for (std::size_t i = 0; i < inst.terminals.size(); ++i)
      order.anchor[static_cast<std::size_t>(inst.terminals[i])] = (*inst.eta)[i];
  }

  order.anchor_rank.assign(static_cast<std::size_t>(metric.n), 0);
  for (int v = 0; v < metric.n; ++v)
    order.anchor_rank[static_cast<std::size_t>(v)] =
        rank_of[static_cast<std::size_t>(order.anchor[static_cast<std::size_t>(v)])];

  order.vertex_order.resize(static_cast<std::size_t>(metric.n));
  std::iota(order.vertex_order.begin(), order.vertex_order.end(), 0);
  std::sort(order.vertex_order.begin(), order.vertex_order.end(), [&](int a, int b) {
    int ka = a == inst.source ? -1 : order.anchor_rank[static_cast<std::size_t>(a)];
    int kb = b == inst.source ? -1 : order.anchor_rank[static_cast<std::size_t>(b)];
    if (ka != kb) return ka < kb;
    return a < b;
  });

  std::vector<bool> is_terminal(static_cast<std::size_t>(metric.n), false);
  for (int t : inst.terminals) is_terminal[static_cast<std::size_t>(t)] = true;
  for (int v : order.vertex_order)
    if (is_terminal[static_cast<std::size_t>(v)]) order.player_sequence.push_back(v);
  return order;
}

namespace {

// Cheapest connection of `target` to the source when `claimed` edges are
// free. Returns the cost and the source..target vertex sequence; Dijkstra
// processes vertices by (distance, vertex) and never replaces a parent on a
// tie, so the result is deterministic.
std::pair<Rat, std::vector<int>> cheapest_connection(
    const Metric& metric, const std::vector<std::vector<bool>>& claimed, int source, int target) {
  auto sn = static_cast<std::size_t>(metric.n);
  std::vector<std::optional<Rat>> dist(sn);
  std::vector<int> parent(sn, -1);
  std::vector<bool> done(sn, false);
  dist[static_cast<std::size_t>(source)] = Rat(0);

  for (;;) {
    int cur = -1;
    for (int v = 0; v < metric.n; ++v) {
      auto sv = static_cast<std::size_t>(v);
      if (done[sv] || !dist[sv]) continue;
      if (cur < 0 || *dist[sv] < *dist[static_cast<std::size_t>(cur)]) cur = v;
    }
    if (cur < 0) break;
    auto sc = static_cast<std::size_t>(cur);
    done[sc] = true;
    for (int w = 0; w < metric.n; ++w) {
      auto sw = static_cast<std::size_t>(w);
      if (done[sw] || !metric.adjacency[sc][sw]) continue;
      Rat step = claimed[sc][sw] ? Rat(0) : *metric.adjacency[sc][sw];
      Rat via = *dist[sc] + step;
      if (!dist[sw] || via < *dist[sw]) {
        dist[sw] = via;
        parent[sw] = cur;
      }
    }
  }

  auto st = static_cast<std::size_t>(target);
  if (!dist[st]) throw InputError("terminal is unreachable");
  std::vector<int> seq;
  for (int v = target; v != -1; v = parent[static_cast<std::size_t>(v)]) seq.push_back(v);
  std::reverse(seq.begin(), seq.end());
  return {*dist[st], std::move(seq)};
}

}  // namespace

GreedyOutcome greedy_equilibrium(const MulticastInstance& inst, const Metric& metric,
                                 const PriorityOrder& order) {
  GreedyOutcome out;
  out.total_cost = 0;
  auto sn = static_cast<std::size_t>(metric.n);
  std::vector<std::vector<bool>> claimed(sn, std::vector<bool>(sn, false));

  for (int t : order.player_sequence) {
    auto [cost, seq] = cheapest_connection(metric, claimed, inst.source, t);
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      auto u = static_cast<std::size_t>(seq[i]), v = static_cast<std::size_t>(seq[i + 1]);
      if (!claimed[u][v]) {
        claimed[u][v] = claimed[v][u] = true;
        out.used_edges.emplace_back(std::min(seq[i], seq[i + 1]), std::max(seq[i], seq[i + 1]));
      }
    }
    out.paths.push_back(std::move(seq));
    out.shares.push_back(cost);
    out.total_cost += cost;
  }
  std::sort(out.used_edges.begin(), out.used_edges.end());
  return out;
}

bool verify_greedy(const MulticastInstance& inst, const Metric& metric,
                   const PriorityOrder& order, const GreedyOutcome& outcome) {
  auto sn = static_cast<std::size_t>(metric.n);
  std::vector<std::vector<bool>> claimed(sn, std::vector<bool>(sn, false));
  for (std::size_t i = 0; i < order.player_sequence.size(); ++i) {
    auto [best, seq] =
        cheapest_connection(metric, claimed, inst.source, order.player_sequence[i]);
    if (!(outcome.shares[i] == best)) return false;
    const auto& path = outcome.paths[i];
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      auto u = static_cast<std::size_t>(path[j]), v = static_cast<std::size_t>(path[j + 1]);
      claimed[u][v] = claimed[v][u] = true;
    }
  }
  return true;
}

std::vector<Rat> ordered_shares(const MulticastInstance& inst, const PriorityOrder& order,
                                const std::vector<std::vector<int>>& paths) {
  if (paths.size() != order.player_sequence.size())
    throw InputError("expected one path per player");
  auto sn = static_cast<std::size_t>(inst.vertex_count());
  std::vector<std::vector<std::optional<Rat>>> adj(sn, std::vector<std::optional<Rat>>(sn));
  for (const auto& e : inst.edges) {
    auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    if (!adj[u][v] || e.weight < *adj[u][v]) {
      adj[u][v] = e.weight;
      adj[v][u] = e.weight;
    }
  }

  std::vector<std::vector<bool>> claimed(sn, std::vector<bool>(sn, false));
  std::vector<Rat> shares;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& path = paths[i];
    if (path.empty() || path.front() != inst.source || path.back() != order.player_sequence[i])
      throw InputError("path " + std::to_string(i) + " must run from the source to the player's terminal");
    Rat share = 0;
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      auto u = static_cast<std::size_t>(path[j]), v = static_cast<std::size_t>(path[j + 1]);
      if (!adj[u][v])
        throw InputError("path " + std::to_string(i) + " uses a non-edge");
      if (!claimed[u][v]) {
        share += *adj[u][v];
        claimed[u][v] = claimed[v][u] = true;
      }
    }
    shares.push_back(share);
  }
  return shares;
}

Rat steiner_optimum(const Metric& metric, std::vector<int> targets) {
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (int t : targets)
    if (t < 0 || t >= metric.n) throw InputError("Steiner target out of range");
  if (targets.size() <= 1) return Rat(0);
  if (targets.size() > 13)
    throw LimitError("Steiner optimum limited to 13 targets, got " +
                     std::to_string(targets.size()));

  // dp[mask][v]: cheapest tree spanning targets[1..] selected by mask, plus v.
  // targets[0] is the root; the answer is dp[full][targets[0]].
  auto sn = static_cast<std::size_t>(metric.n);
  std::size_t k = targets.size() - 1;
  Rat inf = 1;
  for (std::size_t u = 0; u < sn; ++u)
    for (std::size_t v = 0; v < sn; ++v) inf += metric.dist[u][v];

  std::vector<std::vector<Rat>> dp(std::size_t(1) << k, std::vector<Rat>(sn, inf));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t v = 0; v < sn; ++v)
      dp[std::size_t(1) << i][v] = metric.dist[static_cast<std::size_t>(targets[i + 1])][v];

  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    auto& row = dp[mask];
    if (std::popcount(mask) > 1) {
      std::size_t low = mask & (~mask + 1);
      for (std::size_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;  // keep the low bit on one side only
        const auto& a = dp[sub];
        const auto& b = dp[mask ^ sub];
        for (std::size_t v = 0; v < sn; ++v) {
          Rat sum = a[v] + b[v];
          if (sum < row[v]) row[v] = sum;
        }
      }
    }
    // One metric relaxation round closes the row (triangle inequality).
    for (std::size_t v = 0; v < sn; ++v) {
      Rat best = row[v];
      for (std::size_t u = 0; u < sn; ++u) {
        Rat via = row[u] + metric.dist[u][v];
        if (via < best) best = via;
      }
      row[v] = best;
    }
  }
  return dp[dp.size() - 1][static_cast<std::size_t>(targets[0])];
}

PredictionError prediction_error(const MulticastInstance& inst, const Metric& metric,
                                 const std::vector<int>& assignment) {
  if (assignment.size() != inst.terminals.size())
    throw InputError("assignment must have one entry per terminal");
  std::vector<bool> allowed(static_cast<std::size_t>(metric.n), false);
  allowed[static_cast<std::size_t>(inst.source)] = true;
  for (int h : inst.predicted) allowed[static_cast<std::size_t>(h)] = true;

  PredictionError err;
  err.distance = 0;
  std::vector<bool> used(static_cast<std::size_t>(metric.n), false);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    int a = assignment[i];
    if (a == -1) {
      ++err.unmatched_terminals;
      continue;
    }
    if (a < 0 || a >= metric.n || !allowed[static_cast<std::size_t>(a)])
      throw InputError("assignment target must be a predicted point or the source");
    err.distance += metric.dist[static_cast<std::size_t>(inst.terminals[i])]
                               [static_cast<std::size_t>(a)];
    used[static_cast<std::size_t>(a)] = true;
  }
  for (int h : inst.predicted)
    if (!used[static_cast<std::size_t>(h)]) ++err.unused_predictions;
  return err;
}

long logterm(long x) {
  if (x <= 1) return 0;
  return static_cast<long>(std::bit_width(static_cast<unsigned long>(x - 1))) + 1;
}

BestError best_prediction_error(const MulticastInstance& inst, const Metric& metric) {
  if (inst.terminals.empty())
    throw InputError("best-error search needs at least one terminal");
  if (inst.predicted.size() > 16)
    throw LimitError("best-error search limited to 16 predicted points");

  std::vector<int> steiner_targets{inst.source};
  steiner_targets.insert(steiner_targets.end(), inst.terminals.begin(), inst.terminals.end());
  Rat opt = steiner_optimum(metric, steiner_targets);
  if (opt == 0) throw InputError("Steiner optimum is zero; objective undefined");

  std::size_t nr = inst.terminals.size();
  std::size_t nh = inst.predicted.size();
  std::size_t masks = std::size_t(1) << nh;

  // Forward layers over (used-predictions mask, unmatched count) -> min D.
  // choice[i+1][mask][u] records how terminal i reached that state:
  // -1 unmatched, otherwise the predicted point's index.
  std::vector<Rat> cur_d(masks * (nr + 1)), next_d(masks * (nr + 1));
  std::vector<char> cur_ok(masks * (nr + 1), 0), next_ok(masks * (nr + 1), 0);
  std::vector<std::vector<signed char>> choice(
      nr + 1, std::vector<signed char>(masks * (nr + 1), -2));
  auto at = [&](std::size_t mask, std::size_t u) { return mask * (nr + 1) + u; };

  cur_ok[at(0, 0)] = 1;
  cur_d[at(0, 0)] = 0;
  for (std::size_t i = 0; i < nr; ++i) {
    std::fill(next_ok.begin(), next_ok.end(), 0);
    auto t = static_cast<std::size_t>(inst.terminals[i]);
    for (std::size_t mask = 0; mask < masks; ++mask)
      for (std::size_t u = 0; u <= i; ++u) {
        auto idx = at(mask, u);
        if (!cur_ok[idx]) continue;
        const Rat& d = cur_d[idx];
        auto consider = [&](std::size_t nmask, std::size_t nu, Rat nd, signed char tag) {
          auto nidx = at(nmask, nu);
          if (!next_ok[nidx] || nd < next_d[nidx]) {
            next_ok[nidx] = 1;
            next_d[nidx] = std::move(nd);
            choice[i + 1][nidx] = tag;
          }
        };
        consider(mask, u + 1, d, -1);
        for (std::size_t h = 0; h < nh; ++h) {
          if (mask & (std::size_t(1) << h)) continue;
          Rat nd = d + metric.dist[t][static_cast<std::size_t>(inst.predicted[h])];
          consider(mask | (std::size_t(1) << h), u, std::move(nd), static_cast<signed char>(h));
        }
      }
    std::swap(cur_d, next_d);
    std::swap(cur_ok, next_ok);
  }

  BestError best;
  bool have = false;
  std::size_t best_mask = 0, best_u = 0;
  for (std::size_t mask = 0; mask < masks; ++mask)
    for (std::size_t u = 0; u <= nr; ++u) {
      auto idx = at(mask, u);
      if (!cur_ok[idx]) continue;
      long delta = static_cast<long>(u) + static_cast<long>(nh) -
                   static_cast<long>(std::popcount(mask));
      Rat objective = Rat(6) * cur_d[idx] / opt + logterm(delta);
      if (!have || objective < best.objective) {
        have = true;
        best.objective = objective;
        best_mask = mask;
        best_u = u;
      }
    }

  best.assignment.assign(nr, -1);
  std::size_t mask = best_mask, u = best_u;
  for (std::size_t i = nr; i > 0; --i) {
    signed char tag = choice[i][at(mask, u)];
    if (tag == -1) {
      --u;
    } else {
      best.assignment[i - 1] = inst.predicted[static_cast<std::size_t>(tag)];
      mask ^= std::size_t(1) << static_cast<std::size_t>(tag);
    }
  }
  best.error = prediction_error(inst, metric, best.assignment);
  best.optimum = opt;
  return best;
}

std::vector<BoundRow> check_bounds(const MulticastInstance& inst, const Metric& metric,
                                   const GreedyOutcome& outcome, const Rat& optimum,
                                   const std::optional<std::vector<int>>& assignment) {
  std::vector<BoundRow> rows;
  const Rat& cost = outcome.total_cost;

  if (assignment) {
    PredictionError err = prediction_error(inst, metric, *assignment);
    if (err.unmatched_terminals == 0) {
      BoundRow row;
      row.name = "known-set";
      row.lhs = cost;
      row.rhs = Rat(6) * err.distance + Rat(4) * optimum;
      row.holds = row.lhs <= row.rhs;
      row.weak_rhs = row.rhs;
      row.weak_holds = row.holds;
      rows.push_back(std::move(row));
    }
    BoundRow row;
    row.name = "error-robust";
    row.lhs = cost;
    Rat logs = Rat(logterm(err.unused_predictions) + logterm(err.unmatched_terminals));
    row.rhs = Rat(6) * err.distance + Rat(4) * optimum + logs * optimum;
    row.holds = row.lhs <= row.rhs;
    row.weak_rhs = Rat(6) * err.distance + Rat(4) * optimum + Rat(4) * logs * optimum;
    row.weak_holds = row.lhs <= row.weak_rhs;
    row.log_flagged = !row.holds;
    rows.push_back(std::move(row));
  }

  BoundRow robust;
  robust.name = "player-robust";
  robust.lhs = cost;
  Rat lt = Rat(logterm(static_cast<long>(inst.terminals.size()) + 1));
  robust.rhs = lt * optimum;
  robust.holds = robust.lhs <= robust.rhs;
  robust.weak_rhs = Rat(4) * lt * optimum;
  robust.weak_holds = robust.lhs <= robust.weak_rhs;
  robust.log_flagged = !robust.holds;
  rows.push_back(std::move(robust));
  return rows;
}

}  // namespace anarchy
