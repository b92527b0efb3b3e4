// Acceptance gate: eleven exact, seeded checks covering the online
// allocator, the penalty mechanism, the multicast mechanism and the
// supporting oracles. One [PASS]/[FAIL] line per criterion on stdout,
// violation details on stderr, exit code = number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "braess.hpp"
#include "equilibria.hpp"
#include "error.hpp"
#include "game.hpp"
#include "generate.hpp"
#include "instance.hpp"
#include "mechanism.hpp"
#include "multicast.hpp"
#include "online.hpp"
#include "spg.hpp"

using namespace anarchy;

namespace {

struct Failure {
  std::string reason;
};

[[noreturn]] void fail(std::string reason) { throw Failure{std::move(reason)}; }

void detail(const std::string& line) { std::fprintf(stderr, "  %s\n", line.c_str()); }

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

int g_failures = 0;

void run_criterion(int index, const char* name, const std::function<std::string()>& body) {
  auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string note;
  try {
    note = body();
  } catch (const Failure& f) {
    pass = false;
    note = f.reason;
  } catch (const std::exception& e) {
    pass = false;
    note = std::string("unexpected exception: ") + e.what();
  }
  if (!pass) ++g_failures;
  std::printf("[%s] %02d %s: %s (%.0f ms)\n", pass ? "PASS" : "FAIL", index, name, note.c_str(),
              ms_since(start));
  std::fflush(stdout);
}

// Leaf index interval covered by each decomposition node. Leaves are
// numbered left to right, so every subtree spans a contiguous range; the
// fold runs backwards because children follow their parent in preorder.
std::vector<std::pair<int, int>> leaf_spans(const SpgTree& g) {
  std::vector<std::pair<int, int>> spans(static_cast<std::size_t>(g.node_count()));
  for (int v = g.node_count() - 1; v >= 0; --v) {
    const SpgNode& node = g.node(v);
    auto& span = spans[static_cast<std::size_t>(v)];
    if (node.kind == SpgNode::Kind::edge)
      span = {node.leaf, node.leaf};
    else
      span = {spans[static_cast<std::size_t>(node.left)].first,
              spans[static_cast<std::size_t>(node.right)].second};
  }
  return spans;
}

bool path_touches(const Path& path, std::pair<int, int> span) {
  for (int e : path)
    if (e >= span.first && e <= span.second) return true;
  return false;
}

// Shared run results, computed once and reported by several criteria. A
// family that threw stays failed for every criterion that depends on it.
template <typename T>
const T& memoized(std::optional<T>& slot, std::string& error, T (*build)()) {
  if (!error.empty()) throw Failure{error};
  if (!slot) {
    try {
      slot = build();
    } catch (const Failure& f) {
      error = f.reason;
      throw;
    } catch (const std::exception& e) {
      error = std::string("unexpected exception: ") + e.what();
      throw Failure{error};
    }
  }
  return *slot;
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2: the online allocator over 500 seeded instances.

struct OnlineRuns {
  long instances = 0;
  long placements = 0;
  long ratio_violations = 0;
  long level_violations = 0;
  double ms = 0;
};

OnlineRuns build_online_runs() {
  OnlineRuns r;
  auto start = std::chrono::steady_clock::now();
  for (long seed = 1; seed <= 500; ++seed) {
    SpgGenParams params;
    params.seed = seed;
    params.max_edges = 8;
    params.max_cost = 100;
    params.q_max = 10;
    params.n_max = 10;
    SpgCase c = compile_spg(gen_spg_instance(params));
    const SpgGame& game = c.game;
    ++r.instances;

    OnlineState state = online_start(game);
    for (long q = 1; q <= c.n; ++q) {
      online_step(game, state);
      ++r.placements;

      CostValue cost = game.cost_of_loads(state.loads);
      if (!(cost <= game.opt.cost[static_cast<std::size_t>(q)].scaled(4))) {
        if (++r.ratio_violations == 1)
          detail("seed " + std::to_string(seed) + ", player " + std::to_string(q) + ": cost " +
                 cost.str() + " exceeds 4 * " +
                 game.opt.cost[static_cast<std::size_t>(q)].str());
      }

      const auto& ladder = game.scale.max_players;
      long admissible = -1;
      for (std::size_t k = 0; k < ladder.size(); ++k)
        if (q <= ladder[k]) {
          admissible = static_cast<long>(k);
          break;
        }
      if (admissible < 0 || state.levels[static_cast<std::size_t>(q - 1)] > admissible) {
        if (++r.level_violations == 1)
          detail("seed " + std::to_string(seed) + ", player " + std::to_string(q) + ": level " +
                 std::to_string(state.levels[static_cast<std::size_t>(q - 1)]) +
                 " above the smallest admissible " + std::to_string(admissible));
      }
    }
  }
  r.ms = ms_since(start);
  return r;
}

const OnlineRuns& online_runs() {
  static std::optional<OnlineRuns> slot;
  static std::string error;
  return memoized(slot, error, build_online_runs);
}

std::string criterion_online_ratio() {
  const OnlineRuns& r = online_runs();
  if (r.ratio_violations > 0)
    fail(std::to_string(r.ratio_violations) + " of " + std::to_string(r.placements) +
         " allocations exceeded four times the optimum");
  if (r.ms >= 10000) fail("runs took " + std::to_string(r.ms) + " ms, budget is 10 s");
  return std::to_string(r.instances) + " instances, " + std::to_string(r.placements) +
         " placements all within 4x of the offline optimum";
}

std::string criterion_online_levels() {
  const OnlineRuns& r = online_runs();
  if (r.level_violations > 0)
    fail(std::to_string(r.level_violations) + " placements ran above the admissible scale level");
  return "every placement stayed at or below the smallest admissible scale level";
}

// ---------------------------------------------------------------------------
// Criterion 3: allocation extension inequalities on random triples.

std::string criterion_extension() {
  Rng rng(424242);
  long violations = 0;
  const long trials = 1000;
  for (long t = 1; t <= trials; ++t) {
    SpgGenParams params;
    params.seed = t;
    params.max_edges = 8;
    params.q_max = 8;
    params.n_max = 8;
    SpgTree tree = SpgTree::parse(gen_spg_instance(params).graph);
    auto paths = enumerate_paths(tree);
    long pick_max = static_cast<long>(paths.size()) - 1;

    long q_target = rng.uniform(1, 8);
    long q_from = rng.uniform(0, q_target);
    std::vector<Path> target_paths, from_paths;
    for (long i = 0; i < q_target; ++i)
      target_paths.push_back(paths[static_cast<std::size_t>(rng.uniform(0, pick_max))]);
    for (long i = 0; i < q_from; ++i)
      from_paths.push_back(paths[static_cast<std::size_t>(rng.uniform(0, pick_max))]);
    LoadProfile target = loads_of_paths(tree, target_paths);
    LoadProfile from = loads_of_paths(tree, from_paths);

    LoadProfile grown = extend_allocation(tree, target, from);
    bool ok = component_load(tree, grown, SpgTree::root()) == q_target;
    for (std::size_t e = 0; ok && e < grown.size(); ++e)
      ok = grown[e] >= from[e] && grown[e] <= std::max(from[e], target[e]);
    if (!ok && ++violations == 1)
      detail("trial " + std::to_string(t) + ": extension left the proved interval");
  }
  if (violations > 0) fail(std::to_string(violations) + " of 1000 triples violated the bounds");
  return "1000 random triples, both edge-wise inequalities hold everywhere";
}

// ---------------------------------------------------------------------------
// Criteria 4, 5, 6: exhaustive equilibrium sweeps over 200 instances.

struct MechRuns {
  long instances = 0;
  long sweeps = 0;
  long equilibria = 0;
  long ratio_violations = 0;
  long over_violations = 0;    // prediction >= n but some edge above its threshold
  long under_violations = 0;   // prediction < n but some component below its threshold
  long charge_violations = 0;  // excess player paying less than the penalty weight
  long empty_sweeps = 0;
  long sequential_misses = 0;
  double ms = 0;
};

MechRuns build_mech_runs() {
  MechRuns r;
  auto start = std::chrono::steady_clock::now();
  for (long seed = 1; seed <= 200; ++seed) {
    SpgGenParams params;
    params.seed = seed;
    params.max_edges = 6;
    params.max_cost = 50;
    params.q_max = 8;
    params.max_paths = 6;
    params.n_max = 5;
    SpgCase c = compile_spg(gen_spg_instance(params));
    const SpgGame& game = c.game;
    auto paths = enumerate_paths(game.tree);
    auto spans = leaf_spans(game.tree);
    ++r.instances;

    for (long n = 1; n <= 5; ++n) {
      auto order = identity_order(n);
      for (long n_hat = std::max<long>(1, n - 3); n_hat <= std::min<long>(8, n + 3); ++n_hat) {
        ++r.sweeps;
        PenaltyWeights w = build_penalty_weights(game, n_hat);
        Enumeration all = enumerate_equilibria(game, w, paths, n, order, 2000000ull);

        if (all.equilibria.empty()) {
          if (++r.empty_sweeps == 1)
            detail("seed " + std::to_string(seed) + " n=" + std::to_string(n) +
                   " n_hat=" + std::to_string(n_hat) + ": no equilibrium found");
          continue;
        }
        EquilibriumReport seq = sequential_equilibrium(game, w, paths, n, order);
        bool seq_found = false;
        for (const auto& eq : all.equilibria) seq_found = seq_found || eq.profile == seq.profile;
        if (!seq_found && ++r.sequential_misses == 1)
          detail("seed " + std::to_string(seed) + " n=" + std::to_string(n) +
                 " n_hat=" + std::to_string(n_hat) + ": sequential profile not in enumeration");

        long delta = n > n_hat ? n - n_hat : n_hat - n;
        Rat bound = std::min(Rat(4 * (delta + 1)), Rat(4 * n));
        const auto& worst = all.equilibria[all.worst];
        const CostValue& opt_n = game.opt.cost[static_cast<std::size_t>(n)];
        if (worst.social_modified.base.is_unbounded() ||
            !(worst.social_modified.base <= opt_n.scaled(bound))) {
          if (++r.ratio_violations == 1)
            detail("seed " + std::to_string(seed) + " n=" + std::to_string(n) +
                   " n_hat=" + std::to_string(n_hat) + ": worst equilibrium " +
                   worst.social_modified.str() + " against optimum " + opt_n.str() +
                   " breaks bound " + format_rational(bound));
        }

        auto threshold_nodes = node_loads(game.tree, w.threshold_loads);
        for (const auto& eq : all.equilibria) {
          ++r.equilibria;
          std::vector<Path> chosen;
          chosen.reserve(static_cast<std::size_t>(n));
          for (long i = 0; i < n; ++i)
            chosen.push_back(paths[static_cast<std::size_t>(eq.profile[static_cast<std::size_t>(i)])]);
          LoadProfile loads = loads_of_paths(game.tree, chosen);
          auto nodes = node_loads(game.tree, loads);

          if (n_hat >= n) {
            for (std::size_t e = 0; e < loads.size(); ++e)
              if (loads[e] > w.threshold_loads[e] && ++r.over_violations == 1)
                detail("seed " + std::to_string(seed) + " n=" + std::to_string(n) +
                       " n_hat=" + std::to_string(n_hat) + ": edge " +
                       game.tree.leaf_id(static_cast<int>(e)) + " above its threshold");
          } else {
            for (std::size_t v = 0; v < nodes.size(); ++v)
              if (nodes[v] < threshold_nodes[v] && ++r.under_violations == 1)
                detail("seed " + std::to_string(seed) + " n=" + std::to_string(n) +
                       " n_hat=" + std::to_string(n_hat) + ": component " + std::to_string(v) +
                       " below the anticipated load");
          }

          // Every player beyond a component's threshold must pay at least
          // the penalty weight on each edge of her sub-path through it.
          for (int v = 0; v < game.tree.node_count(); ++v) {
            long excess = nodes[static_cast<std::size_t>(v)] -
                          threshold_nodes[static_cast<std::size_t>(v)];
            if (excess <= 0) continue;
            std::vector<long> users;
            for (long i = 0; i < n; ++i)
              if (path_touches(chosen[static_cast<std::size_t>(i)],
                               spans[static_cast<std::size_t>(v)]))
                users.push_back(i);
            for (std::size_t u = users.size() - static_cast<std::size_t>(excess);
                 u < users.size(); ++u) {
              long i = users[u];
              for (int e : chosen[static_cast<std::size_t>(i)]) {
                if (e < spans[static_cast<std::size_t>(v)].first ||
                    e > spans[static_cast<std::size_t>(v)].second)
                  continue;
                long pos = 0;
                for (long j = 0; j <= i; ++j)
                  for (int f : chosen[static_cast<std::size_t>(j)]) pos += (f == e);
                const EpsCost& charged =
                    w.marginal[static_cast<std::size_t>(e)][static_cast<std::size_t>(pos - 1)];
                if (!(charged >= w.edge_weight(game.tree, e)) && ++r.charge_violations == 1)
                  detail("seed " + std::to_string(seed) + " n=" + std::to_string(n) +
                         " n_hat=" + std::to_string(n_hat) + ": player " + std::to_string(i) +
                         " pays " + charged.str() + " on edge " + game.tree.leaf_id(e) +
                         ", below its weight " + w.edge_weight(game.tree, e).str());
              }
            }
          }
        }
      }
    }
  }
  r.ms = ms_since(start);
  return r;
}

const MechRuns& mech_runs() {
  static std::optional<MechRuns> slot;
  static std::string error;
  return memoized(slot, error, build_mech_runs);
}

std::string criterion_mechanism_bound() {
  const MechRuns& r = mech_runs();
  if (r.ratio_violations > 0)
    fail(std::to_string(r.ratio_violations) + " of " + std::to_string(r.sweeps) +
         " sweeps broke min{4(delta+1), 4n}");
  if (r.ms >= 120000) fail("runs took " + std::to_string(r.ms) + " ms, budget is 2 min");
  return std::to_string(r.instances) + " instances, " + std::to_string(r.sweeps) +
         " (n, n_hat) sweeps, every worst equilibrium within min{4(delta+1), 4n}";
}

std::string criterion_equilibrium_structure() {
  const MechRuns& r = mech_runs();
  long bad = r.over_violations + r.under_violations + r.charge_violations;
  if (bad > 0)
    fail(std::to_string(r.over_violations) + " overprediction, " +
         std::to_string(r.under_violations) + " underprediction and " +
         std::to_string(r.charge_violations) + " charge-pattern violations");
  return std::to_string(r.equilibria) + " equilibria: thresholds respected and every excess " +
         "player pays at least the penalty weight on her sub-path";
}

std::string criterion_equilibrium_existence() {
  const MechRuns& r = mech_runs();
  if (r.empty_sweeps > 0 || r.sequential_misses > 0)
    fail(std::to_string(r.empty_sweeps) + " sweeps without equilibria, " +
         std::to_string(r.sequential_misses) + " sequential profiles missing");
  return "every sweep has equilibria and the sequential profile is always among them";
}

// ---------------------------------------------------------------------------
// Criteria 7, 9 and the Steiner half of 11: 201 multicast instances.

struct McRuns {
  long instances = 0;
  long greedy_failures = 0;
  long bound_violations = 0;
  long zero_radius_violations = 0;
  long mst_violations = 0;
  long steiner_checked = 0;
  long steiner_mismatches = 0;
  double ms = 0;
};

// Cheapest edge subset connecting all targets, by exhaustive search with a
// union-find per subset. Only called on graphs with at most 12 edges.
Rat brute_steiner(const MulticastInstance& inst, const std::vector<int>& targets) {
  const auto m = static_cast<unsigned>(inst.edges.size());
  std::optional<Rat> best;
  std::vector<int> parent(static_cast<std::size_t>(inst.vertex_count()));
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    Rat total = 0;
    for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = static_cast<int>(v);
    bool pruned = false;
    for (unsigned e = 0; e < m && !pruned; ++e)
      if (mask & (1ul << e)) {
        const auto& edge = inst.edges[e];
        total += edge.weight;
        parent[static_cast<std::size_t>(find(edge.u))] = find(edge.v);
        pruned = best && total >= *best;
      }
    if (pruned) continue;
    bool connected = true;
    for (int t : targets) connected = connected && find(t) == find(targets[0]);
    if (connected && (!best || total < *best)) best = total;
  }
  return *best;
}

McRuns build_mc_runs() {
  McRuns r;
  auto start = std::chrono::steady_clock::now();
  for (long seed = 1; seed <= 67; ++seed) {
    for (int radius : {0, 1, 2}) {
      McGenParams params;
      params.seed = seed;
      params.radius = radius;
      MulticastInstance inst = compile_multicast(gen_multicast_instance(params));
      Metric metric = metric_closure(inst);
      PriorityOrder order = prediction_order(inst, metric);
      GreedyOutcome outcome = greedy_equilibrium(inst, metric, order);
      ++r.instances;

      if (!verify_greedy(inst, metric, order, outcome) && ++r.greedy_failures == 1)
        detail("seed " + std::to_string(seed) + " radius " + std::to_string(radius) +
               ": greedy outcome failed its equilibrium check");

      std::vector<int> targets{inst.source};
      targets.insert(targets.end(), inst.terminals.begin(), inst.terminals.end());
      Rat opt = steiner_optimum(metric, targets);

      PredictionError err = prediction_error(inst, metric, *inst.eta);
      Rat rhs = Rat(err.distance * 6 + opt * 4);
      if (!(outcome.total_cost <= rhs) && ++r.bound_violations == 1)
        detail("seed " + std::to_string(seed) + " radius " + std::to_string(radius) +
               ": equilibrium " + format_rational(outcome.total_cost) + " above 6D + 4 OPT = " +
               format_rational(rhs));
      if (radius == 0 &&
          !(err.distance == 0 && outcome.total_cost <= Rat(opt * 4)) &&
          ++r.zero_radius_violations == 1)
        detail("seed " + std::to_string(seed) + ": exact prediction missed the 4 OPT bound");

      std::vector<int> predicted_targets{inst.source};
      predicted_targets.insert(predicted_targets.end(), inst.predicted.begin(),
                               inst.predicted.end());
      Rat steiner_predicted = steiner_optimum(metric, predicted_targets);
      if (!(order.prediction_mst_cost <= Rat(steiner_predicted * 2)) && ++r.mst_violations == 1)
        detail("seed " + std::to_string(seed) + " radius " + std::to_string(radius) +
               ": prediction tree " + format_rational(order.prediction_mst_cost) +
               " above twice the Steiner optimum " + format_rational(steiner_predicted));

      if (inst.edges.size() <= 12) {
        ++r.steiner_checked;
        Rat brute = brute_steiner(inst, targets);
        if (!(brute == opt) && ++r.steiner_mismatches == 1)
          detail("seed " + std::to_string(seed) + " radius " + std::to_string(radius) +
                 ": subset search " + format_rational(brute) + " != Steiner program " +
                 format_rational(opt));
      }
    }
  }
  r.ms = ms_since(start);
  return r;
}

const McRuns& mc_runs() {
  static std::optional<McRuns> slot;
  static std::string error;
  return memoized(slot, error, build_mc_runs);
}

std::string criterion_multicast_known() {
  const McRuns& r = mc_runs();
  if (r.greedy_failures > 0)
    fail(std::to_string(r.greedy_failures) + " greedy outcomes failed verification");
  if (r.bound_violations > 0 || r.zero_radius_violations > 0)
    fail(std::to_string(r.bound_violations) + " instances above 6D + 4 OPT, " +
         std::to_string(r.zero_radius_violations) + " exact predictions above 4 OPT");
  if (r.ms >= 120000) fail("runs took " + std::to_string(r.ms) + " ms, budget is 2 min");
  return std::to_string(r.instances) +
         " instances across radii {0, 1, 2}, all within 6D + 4 OPT (4 OPT at radius 0)";
}

std::string criterion_mst_approximation() {
  const McRuns& r = mc_runs();
  if (r.mst_violations > 0)
    fail(std::to_string(r.mst_violations) + " prediction trees above twice the Steiner optimum");
  return "prediction tree within twice the Steiner optimum on all " +
         std::to_string(r.instances) + " instances";
}

// ---------------------------------------------------------------------------
// Criterion 8: unknown-set bound over every candidate assignment.

std::string criterion_multicast_unknown() {
  long instances = 0, size_mismatches = 0, assignments = 0, flagged = 0, hard = 0;
  for (long seed = 1; seed <= 120; ++seed) {
    McGenParams params;
    params.seed = seed;
    params.max_vertices = 9;
    params.max_terminals = 4;
    params.radius = 1 + static_cast<int>(seed % 2);
    params.drop_prob = 0.4;
    params.add_prob = 0.35;
    MulticastInstance inst = compile_multicast(gen_multicast_instance(params));
    Metric metric = metric_closure(inst);
    PriorityOrder order = prediction_order(inst, metric);
    GreedyOutcome outcome = greedy_equilibrium(inst, metric, order);
    ++instances;
    if (inst.predicted.size() != inst.terminals.size()) ++size_mismatches;

    std::vector<int> targets{inst.source};
    targets.insert(targets.end(), inst.terminals.begin(), inst.terminals.end());
    Rat opt = steiner_optimum(metric, targets);

    // Every injective partial assignment of terminals to predicted points.
    std::vector<int> assignment(inst.terminals.size(), -1);
    std::vector<bool> used(inst.predicted.size(), false);
    std::function<void(std::size_t)> visit = [&](std::size_t t) {
      if (t == assignment.size()) {
        ++assignments;
        PredictionError err = prediction_error(inst, metric, assignment);
        Rat logs = Rat(logterm(err.unused_predictions) + logterm(err.unmatched_terminals));
        Rat rhs = Rat(err.distance * 6 + opt * 4 + opt * logs);
        if (outcome.total_cost <= rhs) return;
        Rat weak = Rat(err.distance * 6 + opt * 4 + opt * logs * 4);
        if (outcome.total_cost <= weak) {
          if (++flagged <= 3)
            detail("seed " + std::to_string(seed) + ": flagged assignment, cost " +
                   format_rational(outcome.total_cost) + " between " + format_rational(rhs) +
                   " and the 4x log fallback " + format_rational(weak));
        } else if (++hard == 1) {
          detail("seed " + std::to_string(seed) + ": cost " +
                 format_rational(outcome.total_cost) + " above even the 4x log fallback " +
                 format_rational(weak));
        }
        return;
      }
      visit(t + 1);
      for (std::size_t h = 0; h < used.size(); ++h)
        if (!used[h]) {
          used[h] = true;
          assignment[t] = inst.predicted[h];
          visit(t + 1);
          assignment[t] = -1;
          used[h] = false;
        }
    };
    visit(0);
  }
  if (hard > 0) fail(std::to_string(hard) + " assignments broke even the 4x log fallback");
  if (size_mismatches < 30)
    fail("only " + std::to_string(size_mismatches) +
         " instances had |H| != |R|; the family is too uniform");
  std::string note = std::to_string(assignments) + " assignments over " +
                     std::to_string(instances) + " instances (" +
                     std::to_string(size_mismatches) + " with |H| != |R|)";
  if (flagged > 0)
    note += ", " + std::to_string(flagged) + " flagged rows passed only the 4x log fallback";
  return note;
}

// ---------------------------------------------------------------------------
// Criterion 10: no deterministic online strategy beats (k+1)/3 at k = 100.

std::string criterion_braess() {
  auto start = std::chrono::steady_clock::now();
  BraessReport report = braess_negative_test(100);
  double elapsed = ms_since(start);
  if (report.strategies.size() != 9)
    fail("expected 9 deterministic strategies, got " + std::to_string(report.strategies.size()));
  Rat expected = std::min(Rat(101, 3), Rat(100 * 100, 2 * 100 + 2));
  if (!(report.best_ratio == Rat(101, 3)) || !(report.best_ratio == expected))
    fail("best worst-case ratio " + format_rational(report.best_ratio) + ", expected 101/3");
  for (const auto& s : report.strategies)
    if (!(s.worst_ratio > Rat(4)))
      fail("strategy (" + std::to_string(s.first_path) + ", " + std::to_string(s.second_path) +
           ") stays four-competitive");
  if (report.four_competitive_possible) fail("report claims a four-competitive strategy exists");
  if (elapsed >= 1000) fail("search took " + std::to_string(elapsed) + " ms, budget is 1 s");
  return "k=100: best worst-case ratio is exactly 101/3; no strategy is four-competitive";
}

// ---------------------------------------------------------------------------
// Criterion 11: the dynamic programs agree with blunt exhaustive search.

CostValue brute_route_optimum(const SpgTree& tree, const SpgGame& game,
                              const std::vector<Path>& paths, long q) {
  CostValue best = CostValue::unbounded();
  std::vector<Path> chosen;
  std::function<void(std::size_t, long)> place = [&](std::size_t next, long remaining) {
    if (next + 1 == paths.size()) {
      std::vector<Path> all = chosen;
      for (long i = 0; i < remaining; ++i) all.push_back(paths[next]);
      best = std::min(best, game.cost_of_loads(loads_of_paths(tree, all)));
      return;
    }
    for (long take = 0; take <= remaining; ++take) {
      for (long i = 0; i < take; ++i) chosen.push_back(paths[next]);
      place(next + 1, remaining - take);
      for (long i = 0; i < take; ++i) chosen.pop_back();
    }
  };
  place(0, q);
  return best;
}

std::string criterion_oracles() {
  const McRuns& mc = mc_runs();
  if (mc.steiner_mismatches > 0)
    fail(std::to_string(mc.steiner_mismatches) + " Steiner results disagree with subset search");
  if (mc.steiner_checked < 100)
    fail("only " + std::to_string(mc.steiner_checked) + " graphs had at most 12 edges");

  long route_checked = 0, route_mismatches = 0;
  for (long seed = 1; seed <= 500; ++seed) {
    SpgGenParams params;
    params.seed = seed;
    params.max_edges = 8;
    params.max_cost = 100;
    params.q_max = 10;
    params.n_max = 10;
    ParsedInstance inst = gen_spg_instance(params);
    if (inst.n > 6) continue;
    SpgCase c = compile_spg(inst);
    auto paths = enumerate_paths(c.game.tree);
    ++route_checked;
    for (long q = 0; q <= c.n; ++q)
      if (!(c.game.opt.cost[static_cast<std::size_t>(q)] ==
            brute_route_optimum(c.game.tree, c.game, paths, q)) &&
          ++route_mismatches == 1)
        detail("seed " + std::to_string(seed) + " q=" + std::to_string(q) +
               ": dynamic program disagrees with path-multiset search");
  }
  if (route_mismatches > 0)
    fail(std::to_string(route_mismatches) + " optima disagree with exhaustive search");
  if (route_checked < 100) fail("only " + std::to_string(route_checked) + " instances had n <= 6");
  return "route optimum matches exhaustive search on " + std::to_string(route_checked) +
         " instances; Steiner program matches subset search on " +
         std::to_string(mc.steiner_checked) + " graphs";
}

}  // namespace

int main() {
  run_criterion(1, "online-allocation-four-competitive", criterion_online_ratio);
  run_criterion(2, "online-scale-levels-admissible", criterion_online_levels);
  run_criterion(3, "allocation-extension-interval", criterion_extension);
  run_criterion(4, "mechanism-anarchy-bound", criterion_mechanism_bound);
  run_criterion(5, "equilibrium-load-and-charge-structure", criterion_equilibrium_structure);
  run_criterion(6, "equilibrium-existence-and-stability", criterion_equilibrium_existence);
  run_criterion(7, "multicast-known-set-bound", criterion_multicast_known);
  run_criterion(8, "multicast-unknown-set-bound", criterion_multicast_unknown);
  run_criterion(9, "prediction-tree-two-approximation", criterion_mst_approximation);
  run_criterion(10, "braess-online-lower-bound", criterion_braess);
  run_criterion(11, "oracle-cross-validation", criterion_oracles);
  std::fprintf(stderr, "%d of 11 criteria passed\n", 11 - g_failures);
  return g_failures;
}
