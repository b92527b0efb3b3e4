#include "anarchy.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "braess.hpp"
#include "campaign.hpp"
#include "csv.hpp"
#include "equilibria.hpp"
#include "error.hpp"
#include "instance.hpp"
#include "online.hpp"

using namespace anarchy;

struct anarchy_instance {
  ParsedInstance parsed;
};

namespace {

thread_local std::string g_last_error;

const char* const kPathNames[3] = {"s-a-b-t", "s-a-t", "s-b-t"};

// Copies a report into malloc storage so C callers can free() it (via
// anarchy_string_free).
anarchy_status deliver(const std::string& text, char** out, anarchy_status status) {
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buf) {
    g_last_error = "out of memory";
    return ANARCHY_ERR_INTERNAL;
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  *out = buf;
  return status;
}

template <typename Fn>
anarchy_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const InputError& e) {
    g_last_error = e.what();
    return ANARCHY_ERR_INPUT;
  } catch (const LimitError& e) {
    g_last_error = e.what();
    return ANARCHY_ERR_INPUT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ANARCHY_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return ANARCHY_ERR_INTERNAL;
  }
}

const ParsedInstance& require(const anarchy_instance* inst) {
  if (!inst) throw InputError("null instance handle");
  return inst->parsed;
}

const ParsedInstance& require_kind(const anarchy_instance* inst, ParsedInstance::Kind kind) {
  const ParsedInstance& parsed = require(inst);
  if (parsed.kind != kind)
    throw InputError(kind == ParsedInstance::Kind::spg ? "operation needs an spg instance"
                                                       : "operation needs a multicast instance");
  return parsed;
}

std::string bool_field(bool b) { return b ? "true" : "false"; }

std::string loads_field(const SpgGame& game, const LoadProfile& loads) {
  std::string out;
  for (std::size_t i = 0; i < loads.size(); ++i) {
    if (i) out += ' ';
    out += game.tree.leaf_id(static_cast<int>(i)) + "=" + std::to_string(loads[i]);
  }
  return out;
}

std::string path_field(const SpgGame& game, const Path& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ' ';
    out += game.tree.leaf_id(path[i]);
  }
  return out;
}

std::string profile_field(const PathProfile& profile) {
  std::string out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(profile[i]);
  }
  return out;
}

std::string charges_field(const std::vector<EpsCost>& charges) {
  std::string out;
  for (std::size_t i = 0; i < charges.size(); ++i) {
    if (i) out += "; ";
    out += charges[i].str();
  }
  return out;
}

std::string equilibrium_row(const EquilibriumReport& r, bool worst) {
  return csv_row({profile_field(r.profile), charges_field(r.charges),
                  r.social_modified.base.str(), format_rational(r.social_modified.eps_coeff),
                  r.social_original.str(), bool_field(worst)});
}

unsigned long long effective_cap(long cap) {
  return cap > 0 ? static_cast<unsigned long long>(cap) : 2000000ull;
}

}  // namespace

extern "C" {

const char* anarchy_version(void) { return "1.0.0"; }

const char* anarchy_last_error(void) { return g_last_error.c_str(); }

anarchy_status anarchy_instance_load(const char* path, anarchy_instance** out) {
  return guarded([&] {
    if (!path || !out) throw InputError("null argument");
    auto* inst = new anarchy_instance{load_instance(path)};
    *out = inst;
    return ANARCHY_OK;
  });
}

anarchy_status anarchy_instance_parse(const char* json_text, anarchy_instance** out) {
  return guarded([&] {
    if (!json_text || !out) throw InputError("null argument");
    auto* inst = new anarchy_instance{parse_instance(json_text)};
    *out = inst;
    return ANARCHY_OK;
  });
}

void anarchy_instance_free(anarchy_instance* inst) { delete inst; }

void anarchy_string_free(char* s) { std::free(s); }

anarchy_status anarchy_validate_report(const anarchy_instance* inst, char** out_csv) {
  return guarded([&] {
    if (!out_csv) throw InputError("null argument");
    ValidationReport report = validate_instance(require(inst));
    std::string csv = csv_row({"problem"});
    for (const auto& p : report.problems) csv += csv_row({p});
    if (!report.ok) g_last_error = report.problems.front();
    return deliver(csv, out_csv, report.ok ? ANARCHY_OK : ANARCHY_ERR_INPUT);
  });
}

anarchy_status anarchy_optimum_csv(const anarchy_instance* inst, long q_max, char** out_csv) {
  return guarded([&] {
    if (!out_csv) throw InputError("null argument");
    const ParsedInstance& parsed = require(inst);
    if (parsed.kind == ParsedInstance::Kind::multicast) {
      MulticastInstance mc = compile_multicast(parsed);
      Metric metric = metric_closure(mc);
      std::vector<int> targets{mc.source};
      targets.insert(targets.end(), mc.terminals.begin(), mc.terminals.end());
      Rat opt = steiner_optimum(metric, targets);
      std::string csv = csv_row({"vertices", "terminals", "steiner_opt"});
      csv += csv_row({std::to_string(mc.vertex_count()), std::to_string(mc.terminals.size()),
                      format_rational(opt)});
      return deliver(csv, out_csv, ANARCHY_OK);
    }
    SpgCase c = compile_spg(parsed);
    long limit = q_max < 0 ? c.game.q_max : q_max;
    if (limit > c.game.q_max)
      throw InputError("q " + std::to_string(limit) + " exceeds the table range " +
                       std::to_string(c.game.q_max));
    std::string csv = csv_row({"q", "opt", "loads"});
    for (long q = 0; q <= limit; ++q) {
      auto idx = static_cast<std::size_t>(q);
      csv += csv_row({std::to_string(q), c.game.opt.cost[idx].str(),
                      loads_field(c.game, c.game.opt.loads[idx])});
    }
    return deliver(csv, out_csv, ANARCHY_OK);
  });
}

anarchy_status anarchy_online_csv(const anarchy_instance* inst, long n, char** out_csv) {
  return guarded([&] {
    if (!out_csv) throw InputError("null argument");
    const ParsedInstance& parsed = require_kind(inst, ParsedInstance::Kind::spg);
    SpgCase c = compile_spg(parsed);
    long players = n < 0 ? c.n : n;
    if (players > c.game.q_max)
      throw InputError("n " + std::to_string(players) + " exceeds the table range " +
                       std::to_string(c.game.q_max));
    std::string csv = csv_row({"player", "level", "path", "loads"});
    OnlineState state = online_start(c.game);
    for (long q = 1; q <= players; ++q) {
      int level = online_step(c.game, state);
      csv += csv_row({std::to_string(q), std::to_string(level),
                      path_field(c.game, state.player_paths.back()),
                      loads_field(c.game, state.loads)});
    }
    CompetitiveReport check = competitive_check(c.game, players);
    csv += csv_row({"total", "", "", ""});
    csv += csv_row({"cost=" + check.online_cost.str(), "opt=" + check.optimum_cost.str(),
                    "ratio=" + format_rational(check.ratio),
                    "within_four=" + bool_field(check.within_four)});
    return deliver(csv, out_csv, check.within_four ? ANARCHY_OK : ANARCHY_BOUND_VIOLATION);
  });
}

anarchy_status anarchy_equilibrium_csv(const anarchy_instance* inst, int exhaustive, long cap,
                                       char** out_csv) {
  return guarded([&] {
    if (!out_csv) throw InputError("null argument");
    SpgCase c = compile_spg(require_kind(inst, ParsedInstance::Kind::spg));
    PenaltyWeights weights = build_penalty_weights(c.game, c.n_hat);
    std::vector<Path> paths = enumerate_paths(c.game.tree);
    std::vector<int> order = identity_order(c.n);
    std::string csv =
        csv_row({"profile", "charges", "modified_cost", "eps", "original_cost", "worst"});
    if (exhaustive) {
      Enumeration all = enumerate_equilibria(c.game, weights, paths, c.n, order,
                                             effective_cap(cap), resolve_workers(0));
      for (std::size_t i = 0; i < all.equilibria.size(); ++i)
        csv += equilibrium_row(all.equilibria[i], i == all.worst);
    } else {
      csv += equilibrium_row(sequential_equilibrium(c.game, weights, paths, c.n, order), true);
    }
    return deliver(csv, out_csv, ANARCHY_OK);
  });
}

anarchy_status anarchy_poa_csv(const anarchy_instance* inst, long cap, char** out_csv) {
  return guarded([&] {
    if (!out_csv) throw InputError("null argument");
    SpgCase c = compile_spg(require_kind(inst, ParsedInstance::Kind::spg));
    PenaltyWeights weights = build_penalty_weights(c.game, c.n_hat);
    PoaReport poa = price_of_anarchy(c.game, weights, c.n, identity_order(c.n),
                                     effective_cap(cap), resolve_workers(0));
    std::string csv = csv_row({"n", "n_hat", "delta", "profiles", "equilibria", "worst_pne_cost",
                               "worst_eps", "opt", "ratio", "bound", "bound_satisfied"});
    csv += csv_row({std::to_string(poa.n), std::to_string(poa.n_hat), std::to_string(poa.delta),
                    std::to_string(poa.profiles_checked), std::to_string(poa.equilibrium_count),
                    poa.worst.social_modified.base.str(),
                    format_rational(poa.worst.social_modified.eps_coeff), poa.optimum.str(),
                    format_rational(poa.ratio), format_rational(poa.bound),
                    bool_field(poa.satisfied)});
    return deliver(csv, out_csv, poa.satisfied ? ANARCHY_OK : ANARCHY_BOUND_VIOLATION);
  });
}

anarchy_status anarchy_multicast_csv(const anarchy_instance* inst, int with_best_error,
                                     char** out_csv) {
  return guarded([&] {
    if (!out_csv) throw InputError("null argument");
    MulticastInstance mc = compile_multicast(require_kind(inst, ParsedInstance::Kind::multicast));
    Metric metric = metric_closure(mc);
    PriorityOrder order = prediction_order(mc, metric);
    GreedyOutcome outcome = greedy_equilibrium(mc, metric, order);
    std::vector<int> targets{mc.source};
    targets.insert(targets.end(), mc.terminals.begin(), mc.terminals.end());
    Rat opt = steiner_optimum(metric, targets);

    std::optional<std::vector<int>> assignment;
    if (mc.eta)
      assignment = *mc.eta;
    else if (with_best_error && !mc.terminals.empty() && opt != 0)
      assignment = best_prediction_error(mc, metric).assignment;

    std::string d_field, delta_field, assignment_field;
    if (assignment) {
      PredictionError err = prediction_error(mc, metric, *assignment);
      d_field = format_rational(err.distance);
      delta_field = std::to_string(err.total());
      for (std::size_t i = 0; i < assignment->size(); ++i) {
        if (i) assignment_field += ' ';
        int h = (*assignment)[i];
        assignment_field += std::to_string(mc.label(mc.terminals[i])) + "=" +
                            (h < 0 ? std::string("-") : std::to_string(mc.label(h)));
      }
    }

    std::vector<BoundRow> bounds = check_bounds(mc, metric, outcome, opt, assignment);
    std::string csv = csv_row({"bound", "pne_cost", "opt", "D", "delta", "assignment", "rhs",
                               "holds", "flagged", "weak_rhs", "weak_holds"});
    bool violated = false;
    for (const auto& b : bounds) {
      csv += csv_row({b.name, format_rational(b.lhs), format_rational(opt), d_field, delta_field,
                      assignment_field, format_rational(b.rhs), bool_field(b.holds),
                      bool_field(b.log_flagged), format_rational(b.weak_rhs),
                      bool_field(b.weak_holds)});
      if (!b.holds && !(b.log_flagged && b.weak_holds)) violated = true;
    }
    return deliver(csv, out_csv, violated ? ANARCHY_BOUND_VIOLATION : ANARCHY_OK);
  });
}

anarchy_status anarchy_braess_csv(long k, char** out_csv) {
  return guarded([&] {
    if (!out_csv) throw InputError("null argument");
    BraessReport report = braess_negative_test(k);
    std::string csv = csv_row({"first_path", "second_path", "cost_one", "ratio_one", "cost_two",
                               "ratio_two", "worst_ratio", "best"});
    for (std::size_t i = 0; i < report.strategies.size(); ++i) {
      const BraessStrategy& s = report.strategies[i];
      csv += csv_row({kPathNames[s.first_path], kPathNames[s.second_path],
                      format_rational(s.cost_one), format_rational(s.ratio_one),
                      format_rational(s.cost_two), format_rational(s.ratio_two),
                      format_rational(s.worst_ratio), bool_field(i == report.best_index)});
    }
    return deliver(csv, out_csv, ANARCHY_OK);
  });
}

void anarchy_spg_params_default(anarchy_spg_params* p) {
  if (!p) return;
  SpgCampaignParams defaults;
  p->seed_lo = defaults.seed_lo;
  p->seed_hi = defaults.seed_hi;
  p->max_edges = defaults.gen.max_edges;
  p->max_cost = defaults.gen.max_cost;
  p->cap_fraction = defaults.gen.cap_fraction;
  p->q_max = defaults.gen.q_max;
  p->max_paths = defaults.gen.max_paths;
  p->n_max = defaults.gen.n_max;
  p->nhat_delta = defaults.gen.nhat_delta;
  p->enum_cap = static_cast<long>(defaults.enum_cap);
  p->workers = defaults.workers;
}

anarchy_status anarchy_spg_campaign_csv(const anarchy_spg_params* params, char** out_csv) {
  return guarded([&] {
    if (!params || !out_csv) throw InputError("null argument");
    SpgCampaignParams p;
    p.seed_lo = params->seed_lo;
    p.seed_hi = params->seed_hi;
    p.gen.max_edges = params->max_edges;
    p.gen.max_cost = params->max_cost;
    p.gen.cap_fraction = params->cap_fraction;
    p.gen.q_max = params->q_max;
    p.gen.max_paths = params->max_paths;
    p.gen.n_max = params->n_max;
    p.gen.nhat_delta = params->nhat_delta;
    p.enum_cap = effective_cap(params->enum_cap);
    p.workers = params->workers;
    std::vector<ExperimentRow> rows = run_spg_campaign(p);
    return deliver(experiment_csv(rows), out_csv,
                   rows_all_satisfied(rows) ? ANARCHY_OK : ANARCHY_BOUND_VIOLATION);
  });
}

void anarchy_mc_params_default(anarchy_mc_params* p) {
  if (!p) return;
  McCampaignParams defaults;
  p->seed_lo = defaults.seed_lo;
  p->seed_hi = defaults.seed_hi;
  p->min_vertices = defaults.gen.min_vertices;
  p->max_vertices = defaults.gen.max_vertices;
  p->max_terminals = defaults.gen.max_terminals;
  p->max_weight = defaults.gen.max_weight;
  p->max_extra_edges = defaults.gen.max_extra_edges;
  p->drop_prob = defaults.gen.drop_prob;
  p->add_prob = defaults.gen.add_prob;
  p->radii = nullptr;  // nullptr means the default {0, 1, 2}
  p->radii_len = 0;
  p->workers = defaults.workers;
}

anarchy_status anarchy_mc_campaign_csv(const anarchy_mc_params* params, char** out_csv) {
  return guarded([&] {
    if (!params || !out_csv) throw InputError("null argument");
    McCampaignParams p;
    p.seed_lo = params->seed_lo;
    p.seed_hi = params->seed_hi;
    p.gen.min_vertices = params->min_vertices;
    p.gen.max_vertices = params->max_vertices;
    p.gen.max_terminals = params->max_terminals;
    p.gen.max_weight = params->max_weight;
    p.gen.max_extra_edges = params->max_extra_edges;
    p.gen.drop_prob = params->drop_prob;
    p.gen.add_prob = params->add_prob;
    if (params->radii && params->radii_len > 0)
      p.radii.assign(params->radii, params->radii + params->radii_len);
    p.workers = params->workers;
    std::vector<ExperimentRow> rows = run_multicast_campaign(p);
    return deliver(experiment_csv(rows), out_csv,
                   rows_all_satisfied(rows) ? ANARCHY_OK : ANARCHY_BOUND_VIOLATION);
  });
}

}  // extern "C"
