#include "campaign.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <thread>

#include "csv.hpp"
#include "equilibria.hpp"
#include "error.hpp"

namespace anarchy {

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = csv_row({"instance_id", "n", "n_hat", "D", "delta", "pne_cost", "opt",
                             "ratio", "bound", "bound_satisfied", "runtime_ms", "status"});
  for (const auto& r : rows)
    out += csv_row({r.instance_id, std::to_string(r.n), std::to_string(r.n_hat),
                    format_rational(r.distance_error), std::to_string(r.delta), r.pne_cost.str(),
                    r.optimum.str(), format_rational(r.ratio), format_rational(r.bound),
                    r.bound_satisfied ? "true" : "false", std::to_string(r.runtime_ms), r.status});
  return out;
}

bool rows_all_satisfied(const std::vector<ExperimentRow>& rows) {
  for (const auto& r : rows)
    if (!r.bound_satisfied) return false;
  return true;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ANARCHY_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

// Runs `count` tasks on `workers` threads; task i writes only slot i of the
// result vector, so the output order is deterministic.
template <typename Fn>
void fan_out(long count, int workers, Fn&& task) {
  workers = std::min<long>(std::max(1, workers), count);
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<long> cursor{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          long i = cursor.fetch_add(1);
          if (i >= count) return;
          task(i);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

long elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               start)
      .count();
}

}  // namespace

std::vector<ExperimentRow> run_spg_campaign(const SpgCampaignParams& params) {
  if (params.seed_hi < params.seed_lo) throw InputError("empty seed range");
  long count = params.seed_hi - params.seed_lo + 1;
  std::vector<ExperimentRow> rows(static_cast<std::size_t>(count));

  fan_out(count, resolve_workers(params.workers), [&](long i) {
    auto start = std::chrono::steady_clock::now();
    SpgGenParams gen = params.gen;
    gen.seed = params.seed_lo + i;
    ParsedInstance inst = gen_spg_instance(gen);
    SpgCase c = compile_spg(inst);
    PenaltyWeights weights = build_penalty_weights(c.game, c.n_hat);

    ExperimentRow row;
    row.instance_id = "spg-" + std::to_string(gen.seed);
    row.n = c.n;
    row.n_hat = c.n_hat;
    row.delta = c.n > c.n_hat ? c.n - c.n_hat : c.n_hat - c.n;
    row.optimum = c.game.opt.cost[static_cast<std::size_t>(c.n)];
    try {
      PoaReport poa =
          price_of_anarchy(c.game, weights, c.n, identity_order(c.n), params.enum_cap, 1);
      row.pne_cost = poa.worst.social_modified.base;
      row.ratio = poa.ratio;
      row.bound = poa.bound;
      row.bound_satisfied = poa.satisfied;
    } catch (const LimitError&) {
      std::vector<Path> paths = enumerate_paths(c.game.tree);
      EquilibriumReport seq =
          sequential_equilibrium(c.game, weights, paths, c.n, identity_order(c.n));
      row.pne_cost = seq.social_modified.base;
      row.ratio = row.pne_cost.value() / row.optimum.value();
      row.bound = std::min(Rat(4 * (row.delta + 1)), Rat(4 * c.n));
      row.bound_satisfied = row.ratio <= row.bound;
      row.status = "skipped-exhaustive";
    }
    row.runtime_ms = elapsed_ms(start);
    rows[static_cast<std::size_t>(i)] = std::move(row);
  });
  return rows;
}

std::vector<ExperimentRow> run_multicast_campaign(const McCampaignParams& params) {
  if (params.seed_hi < params.seed_lo) throw InputError("empty seed range");
  if (params.radii.empty()) throw InputError("no perturbation radii");
  long seeds = params.seed_hi - params.seed_lo + 1;
  long count = seeds * static_cast<long>(params.radii.size());
  std::vector<ExperimentRow> rows(static_cast<std::size_t>(count));

  fan_out(count, resolve_workers(params.workers), [&](long i) {
    auto start = std::chrono::steady_clock::now();
    long seed = params.seed_lo + i / static_cast<long>(params.radii.size());
    int radius = params.radii[static_cast<std::size_t>(i) % params.radii.size()];

    McGenParams gen = params.gen;
    gen.seed = seed;
    gen.radius = radius;
    ParsedInstance inst = gen_multicast_instance(gen);
    MulticastInstance mc = compile_multicast(inst);
    Metric metric = metric_closure(mc);
    PriorityOrder order = prediction_order(mc, metric);
    GreedyOutcome outcome = greedy_equilibrium(mc, metric, order);

    std::vector<int> targets{mc.source};
    targets.insert(targets.end(), mc.terminals.begin(), mc.terminals.end());
    Rat opt = steiner_optimum(metric, targets);

    ExperimentRow row;
    row.instance_id = "mc-" + std::to_string(seed) + "-r" + std::to_string(radius);
    row.n = static_cast<long>(mc.terminals.size());
    row.n_hat = static_cast<long>(mc.predicted.size());
    row.pne_cost = CostValue(outcome.total_cost);
    row.optimum = CostValue(opt);
    row.ratio = opt == 0 ? Rat(0) : outcome.total_cost / opt;

    std::optional<std::vector<int>> assignment;
    if (mc.eta) {
      assignment = *mc.eta;
    } else if (!mc.terminals.empty()) {
      assignment = best_prediction_error(mc, metric).assignment;
    }

    if (opt == 0) {
      // No terminals: nothing to bound.
      row.bound = 0;
      row.bound_satisfied = outcome.total_cost == 0;
    } else if (mc.eta) {
      PredictionError err = prediction_error(mc, metric, *assignment);
      row.distance_error = err.distance;
      row.delta = err.total();
      row.bound = (Rat(6) * err.distance + Rat(4) * opt) / opt;
      row.bound_satisfied = row.ratio <= row.bound;
    } else {
      PredictionError err = prediction_error(mc, metric, *assignment);
      row.distance_error = err.distance;
      row.delta = err.total();
      std::vector<BoundRow> bounds = check_bounds(mc, metric, outcome, opt, assignment);
      // Smallest applicable guarantee wins; fall back to the 4x log constant
      // only when the primary form fails.
      bool primary = false, weak = false;
      Rat best_rhs;
      bool have = false;
      for (const auto& b : bounds) {
        if (b.name == "known-set") continue;
        if (!have || b.rhs < best_rhs) {
          best_rhs = b.rhs;
          have = true;
        }
        primary = primary || b.holds;
        weak = weak || b.weak_holds;
      }
      row.bound = best_rhs / opt;
      row.bound_satisfied = primary || weak;
      if (!primary && weak) row.status = "flagged-log";
    }
    row.runtime_ms = elapsed_ms(start);
    rows[static_cast<std::size_t>(i)] = std::move(row);
  });
  return rows;
}

}  // namespace anarchy
