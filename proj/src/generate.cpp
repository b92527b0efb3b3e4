#include "generate.hpp"

#include <algorithm>
#include <set>

#include "error.hpp"

namespace anarchy {

namespace {

unsigned long long mix_seed(long seed, int attempt) {
  auto s = static_cast<unsigned long long>(seed);
  return s * 0x9E3779B97F4A7C15ull + static_cast<unsigned long long>(attempt) + 1;
}

std::string build_tree(Rng& rng, int edges, int& next_id) {
  if (edges == 1) return "e(e" + std::to_string(next_id++) + ")";
  long left = rng.uniform(1, edges - 1);
  char kind = rng.chance(0.5) ? 'S' : 'P';
  std::string l = build_tree(rng, static_cast<int>(left), next_id);
  std::string r = build_tree(rng, edges - static_cast<int>(left), next_id);
  return std::string(1, kind) + "(" + l + "," + r + ")";
}

}  // namespace

ParsedInstance gen_spg_instance(const SpgGenParams& params) {
  if (params.max_edges < 1) throw InputError("max_edges must be at least 1");
  if (params.q_max < 1) throw InputError("q_max must be at least 1");
  if (params.n_max < 1 || params.n_max > params.q_max)
    throw InputError("n_max must lie in 1..q_max");
  if (params.max_cost < 1) throw InputError("max_cost must be at least 1");

  for (int attempt = 0;; ++attempt) {
    if (attempt > 200)
      throw LimitError("no graph with at most " + std::to_string(params.max_paths) +
                       " paths found; relax max_paths or max_edges");
    Rng rng(mix_seed(params.seed, attempt));

    int edges = static_cast<int>(rng.uniform(std::min(2L, static_cast<long>(params.max_edges)),
                                             params.max_edges));
    int next_id = 0;
    std::string expr = build_tree(rng, edges, next_id);
    SpgTree tree = SpgTree::parse(expr);
    std::vector<Path> paths = enumerate_paths(tree);
    if (params.max_paths > 0 && static_cast<int>(paths.size()) > params.max_paths) continue;

    // Finite non-decreasing tables with c(1) >= 1: draw and sort.
    std::vector<std::vector<CostValue>> tables(static_cast<std::size_t>(edges));
    for (int e = 0; e < edges; ++e) {
      std::vector<long> draws(static_cast<std::size_t>(params.q_max));
      for (auto& d : draws) d = rng.uniform(1, params.max_cost);
      std::sort(draws.begin(), draws.end());
      auto& table = tables[static_cast<std::size_t>(e)];
      table.emplace_back(0);
      for (long d : draws) table.emplace_back(d);
    }
    // Capacitate some edges, then free the leftmost path of any caps so each
    // player count up to q_max stays feasible.
    for (int e = 0; e < edges; ++e) {
      if (!rng.chance(params.cap_fraction) || params.q_max < 2) continue;
      long cap = rng.uniform(1, params.q_max - 1);
      auto& table = tables[static_cast<std::size_t>(e)];
      for (long l = cap + 1; l <= params.q_max; ++l)
        table[static_cast<std::size_t>(l)] = CostValue::unbounded();
    }
    for (int leaf : paths.front()) {
      auto& table = tables[static_cast<std::size_t>(leaf)];
      for (long l = 1; l <= params.q_max; ++l)
        if (table[static_cast<std::size_t>(l)].is_unbounded())
          table[static_cast<std::size_t>(l)] = table[static_cast<std::size_t>(l) - 1];
    }

    ParsedInstance inst;
    inst.kind = ParsedInstance::Kind::spg;
    inst.graph = expr;
    for (int leaf = 0; leaf < tree.leaf_count(); ++leaf)
      inst.costs.emplace(tree.leaf_id(leaf), tables[static_cast<std::size_t>(leaf)]);
    inst.n = rng.uniform(1, params.n_max);
    long lo = std::max(1L, inst.n - params.nhat_delta);
    long hi = std::min(params.q_max, inst.n + params.nhat_delta);
    inst.n_hat = rng.uniform(lo, hi);
    return inst;
  }
}

ParsedInstance gen_multicast_instance(const McGenParams& params) {
  if (params.min_vertices < 2) throw InputError("min_vertices must be at least 2");
  if (params.max_vertices < params.min_vertices)
    throw InputError("max_vertices must be at least min_vertices");
  if (params.max_terminals < 1) throw InputError("max_terminals must be at least 1");
  if (params.max_weight < 1) throw InputError("max_weight must be at least 1");

  Rng rng(mix_seed(params.seed, 0x5ca1ab1e));
  int v_count = static_cast<int>(rng.uniform(params.min_vertices, params.max_vertices));

  std::set<std::pair<long, long>> edge_set;
  ParsedInstance inst;
  inst.kind = ParsedInstance::Kind::multicast;
  for (int v = 0; v < v_count; ++v) inst.vertices.push_back(v);
  inst.source = 0;

  auto add_edge = [&](long u, long v) {
    if (u > v) std::swap(u, v);
    if (u == v || edge_set.count({u, v})) return false;
    edge_set.insert({u, v});
    inst.edges.push_back({u, v, Rat(rng.uniform(1, params.max_weight))});
    return true;
  };
  for (int v = 1; v < v_count; ++v) add_edge(rng.uniform(0, v - 1), v);
  long extras = rng.uniform(0, params.max_extra_edges);
  for (long i = 0; i < extras; ++i)
    add_edge(rng.uniform(0, v_count - 1), rng.uniform(0, v_count - 1));

  // Unweighted adjacency for the hop-radius perturbation.
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(v_count));
  for (const auto& [u, v] : edge_set) {
    adj[static_cast<std::size_t>(u)].push_back(static_cast<int>(v));
    adj[static_cast<std::size_t>(v)].push_back(static_cast<int>(u));
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  long t_count = rng.uniform(1, std::min<long>(params.max_terminals, v_count - 1));
  std::set<long> terminal_set;
  while (static_cast<long>(terminal_set.size()) < t_count)
    terminal_set.insert(rng.uniform(1, v_count - 1));
  inst.terminals.assign(terminal_set.begin(), terminal_set.end());

  // Perturb each terminal within the hop radius to get its predicted copy.
  auto perturb = [&](int t) {
    std::vector<int> hops(static_cast<std::size_t>(v_count), -1);
    std::vector<int> frontier{t};
    hops[static_cast<std::size_t>(t)] = 0;
    std::vector<int> reach{t};
    for (int depth = 0; depth < params.radius; ++depth) {
      std::vector<int> next;
      for (int u : frontier)
        for (int w : adj[static_cast<std::size_t>(u)])
          if (hops[static_cast<std::size_t>(w)] < 0) {
            hops[static_cast<std::size_t>(w)] = depth + 1;
            next.push_back(w);
            reach.push_back(w);
          }
      frontier = std::move(next);
    }
    std::sort(reach.begin(), reach.end());
    return reach[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(reach.size()) - 1))];
  };

  std::map<long, long> eta;
  std::set<long> predicted_set;
  for (long t : inst.terminals) {
    int h = perturb(static_cast<int>(t));
    eta[t] = h;
    if (h != inst.source) predicted_set.insert(h);
  }

  bool known_set = params.drop_prob <= 0 && params.add_prob <= 0;
  if (known_set) {
    inst.eta = std::move(eta);
  } else {
    for (auto it = predicted_set.begin(); it != predicted_set.end();) {
      if (rng.chance(params.drop_prob))
        it = predicted_set.erase(it);
      else
        ++it;
    }
    for (long v = 1; v < v_count; ++v)
      if (!predicted_set.count(v) && rng.chance(params.add_prob)) predicted_set.insert(v);
  }
  inst.predicted.assign(predicted_set.begin(), predicted_set.end());
  return inst;
}

}  // namespace anarchy
