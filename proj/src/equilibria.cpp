#include "equilibria.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "error.hpp"

namespace anarchy {

std::vector<int> identity_order(long n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = static_cast<int>(i);
  return order;
}

namespace {

void check_order(const std::vector<int>& order, long n) {
  if (static_cast<long>(order.size()) != n)
    throw InputError("priority order must list every player exactly once");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : order) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
      throw InputError("priority order must be a permutation of 0.." + std::to_string(n - 1));
    seen[static_cast<std::size_t>(p)] = true;
  }
}

// Marginal tables over a common denominator so the enumeration loop handles
// nothing but integer pairs. A finite entry is (a + b*eps) / denom.
struct ScaledEps {
  bool inf = false;
  Int a = 0;
  Int b = 0;
};

struct ScaledTables {
  Int denom = 1;
  std::vector<std::vector<ScaledEps>> marginal;  // [leaf][prior load]

  static ScaledTables build(const PenaltyWeights& w) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    ScaledTables t;
    for (const auto& column : w.marginal)
      for (const EpsCost& m : column) {
        if (m.is_unbounded()) continue;
        t.denom = boost::multiprecision::lcm(t.denom, denominator(m.base.value()));
        t.denom = boost::multiprecision::lcm(t.denom, denominator(m.eps_coeff));
      }
    t.marginal.resize(w.marginal.size());
    for (std::size_t leaf = 0; leaf < w.marginal.size(); ++leaf) {
      t.marginal[leaf].reserve(w.marginal[leaf].size());
      for (const EpsCost& m : w.marginal[leaf]) {
        ScaledEps s;
        if (m.is_unbounded()) {
          s.inf = true;
        } else {
          s.a = numerator(m.base.value()) * (t.denom / denominator(m.base.value()));
          s.b = numerator(m.eps_coeff) * (t.denom / denominator(m.eps_coeff));
        }
        t.marginal[leaf].push_back(std::move(s));
      }
    }
    return t;
  }
};

struct ScaledSum {
  bool inf = false;
  Int a = 0;
  Int b = 0;

  void reset() {
    inf = false;
    a = 0;
    b = 0;
  }
  void add(const ScaledEps& e) {
    if (e.inf) {
      inf = true;
      return;
    }
    a += e.a;
    b += e.b;
  }
  bool less_than(const ScaledSum& o) const {
    if (inf || o.inf) return !inf && o.inf;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
  bool at_least(const ScaledSum& o) const { return !less_than(o); }
};

// True when no player has a strictly improving unilateral deviation.
bool profile_is_pne(const ScaledTables& tables, const std::vector<Path>& paths,
                    const std::vector<int>& digits, const std::vector<int>& order,
                    LoadProfile& prior) {
  std::fill(prior.begin(), prior.end(), 0);
  ScaledSum own, alt;
  for (int player : order) {
    int own_path = digits[static_cast<std::size_t>(player)];
    own.reset();
    for (int leaf : paths[static_cast<std::size_t>(own_path)])
      own.add(tables.marginal[static_cast<std::size_t>(leaf)]
                             [static_cast<std::size_t>(prior[static_cast<std::size_t>(leaf)])]);
    for (int p = 0; p < static_cast<int>(paths.size()); ++p) {
      if (p == own_path) continue;
      alt.reset();
      // Marginals are non-negative, so bail as soon as the partial sum
      // already matches the player's own charge.
      bool hopeless = false;
      for (int leaf : paths[static_cast<std::size_t>(p)]) {
        alt.add(tables.marginal[static_cast<std::size_t>(leaf)]
                               [static_cast<std::size_t>(prior[static_cast<std::size_t>(leaf)])]);
        if (alt.at_least(own)) {
          hopeless = true;
          break;
        }
      }
      if (!hopeless && alt.less_than(own)) return false;
    }
    for (int leaf : paths[static_cast<std::size_t>(own_path)])
      ++prior[static_cast<std::size_t>(leaf)];
  }
  return true;
}

void decode_profile(unsigned long long index, std::size_t path_count, std::vector<int>& digits) {
  for (auto& d : digits) {
    d = static_cast<int>(index % path_count);
    index /= path_count;
  }
}

bool advance_profile(std::vector<int>& digits, std::size_t path_count) {
  for (auto& d : digits) {
    if (static_cast<std::size_t>(++d) < path_count) return true;
    d = 0;
  }
  return false;
}

}  // namespace

EquilibriumReport check_equilibrium(const SpgGame& game, const PenaltyWeights& w,
                                    const std::vector<Path>& paths, const PathProfile& profile,
                                    const std::vector<int>& order) {
  long n = static_cast<long>(profile.size());
  check_order(order, n);
  for (int p : profile)
    if (p < 0 || static_cast<std::size_t>(p) >= paths.size())
      throw InputError("profile refers to path index " + std::to_string(p) + " of " +
                       std::to_string(paths.size()));

  EquilibriumReport rep;
  rep.profile = profile;
  rep.charges.assign(profile.size(), EpsCost());
  rep.deviations.reserve(profile.size());
  rep.is_pne = true;

  LoadProfile prior(static_cast<std::size_t>(game.tree.leaf_count()), 0);
  for (int player : order) {
    const Path& own = paths[static_cast<std::size_t>(profile[static_cast<std::size_t>(player)])];
    DeviationCheck dev;
    dev.player = player;
    dev.charge = path_marginal(w, own, prior);
    dev.best_alternative = profile[static_cast<std::size_t>(player)];
    dev.best_charge = dev.charge;
    for (int p = 0; p < static_cast<int>(paths.size()); ++p) {
      if (p == profile[static_cast<std::size_t>(player)]) continue;
      EpsCost candidate = path_marginal(w, paths[static_cast<std::size_t>(p)], prior);
      if (candidate < dev.best_charge) {
        dev.best_charge = candidate;
        dev.best_alternative = p;
      }
    }
    dev.improves = dev.best_charge < dev.charge;
    if (dev.improves) rep.is_pne = false;
    rep.charges[static_cast<std::size_t>(player)] = dev.charge;
    rep.deviations.push_back(dev);
    for (int leaf : own) ++prior[static_cast<std::size_t>(leaf)];
  }

  // `prior` now holds the full profile's loads.
  rep.social_modified = modified_total(w, prior);
  rep.social_original = game.cost_of_loads(prior);
  return rep;
}

EquilibriumReport sequential_equilibrium(const SpgGame& game, const PenaltyWeights& w,
                                         const std::vector<Path>& paths, long n,
                                         const std::vector<int>& order) {
  check_order(order, n);
  if (paths.empty()) throw InputError("graph has no paths");
  PathProfile profile(static_cast<std::size_t>(n), 0);
  LoadProfile prior(static_cast<std::size_t>(game.tree.leaf_count()), 0);
  for (int player : order) {
    int best = 0;
    EpsCost best_charge = path_marginal(w, paths[0], prior);
    for (int p = 1; p < static_cast<int>(paths.size()); ++p) {
      EpsCost candidate = path_marginal(w, paths[static_cast<std::size_t>(p)], prior);
      if (candidate < best_charge) {
        best_charge = candidate;
        best = p;
      }
    }
    profile[static_cast<std::size_t>(player)] = best;
    for (int leaf : paths[static_cast<std::size_t>(best)]) ++prior[static_cast<std::size_t>(leaf)];
  }
  EquilibriumReport rep = check_equilibrium(game, w, paths, profile, order);
  if (!rep.is_pne)
    throw std::logic_error("sequential best response failed to produce an equilibrium");
  return rep;
}

Enumeration enumerate_equilibria(const SpgGame& game, const PenaltyWeights& w,
                                 const std::vector<Path>& paths, long n,
                                 const std::vector<int>& order, unsigned long long cap,
                                 int workers) {
  check_order(order, n);
  if (paths.empty()) throw InputError("graph has no paths");
  if (n < 0) throw InputError("player count must be non-negative");

  unsigned long long total = 1;
  for (long i = 0; i < n; ++i) {
    if (total > cap / paths.size())
      throw LimitError("exhaustive enumeration needs more than " + std::to_string(cap) +
                       " profiles (" + std::to_string(paths.size()) + "^" + std::to_string(n) + ")");
    total *= paths.size();
  }
  if (total > cap)
    throw LimitError("exhaustive enumeration needs " + std::to_string(total) +
                     " profiles, cap is " + std::to_string(cap));

  ScaledTables tables = ScaledTables::build(w);

  workers = std::max(1, workers);
  auto worker_span = static_cast<unsigned long long>(workers);
  if (worker_span > total) worker_span = total == 0 ? 1 : total;

  std::vector<std::vector<std::pair<unsigned long long, PathProfile>>> found(
      static_cast<std::size_t>(worker_span));

  auto scan = [&](std::size_t slot, unsigned long long lo, unsigned long long hi) {
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    LoadProfile prior(static_cast<std::size_t>(game.tree.leaf_count()), 0);
    decode_profile(lo, paths.size(), digits);
    for (unsigned long long idx = lo; idx < hi; ++idx) {
      if (profile_is_pne(tables, paths, digits, order, prior))
        found[slot].emplace_back(idx, digits);
      advance_profile(digits, paths.size());
    }
  };

  if (worker_span <= 1) {
    scan(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    unsigned long long chunk = total / worker_span;
    unsigned long long rest = total % worker_span;
    unsigned long long lo = 0;
    for (unsigned long long s = 0; s < worker_span; ++s) {
      unsigned long long hi = lo + chunk + (s < rest ? 1 : 0);
      pool.emplace_back(scan, static_cast<std::size_t>(s), lo, hi);
      lo = hi;
    }
    for (auto& t : pool) t.join();
  }

  Enumeration out;
  out.profiles_checked = total;
  for (const auto& bucket : found)
    for (const auto& [idx, profile] : bucket) {
      EquilibriumReport rep = check_equilibrium(game, w, paths, profile, order);
      if (!rep.is_pne)
        throw std::logic_error("scaled enumeration and exact check disagree on a profile");
      out.equilibria.push_back(std::move(rep));
    }
  for (std::size_t i = 0; i < out.equilibria.size(); ++i)
    if (out.equilibria[i].social_modified > out.equilibria[out.worst].social_modified)
      out.worst = i;
  return out;
}

PoaReport price_of_anarchy(const SpgGame& game, const PenaltyWeights& w, long n,
                           const std::vector<int>& order, unsigned long long cap, int workers) {
  if (n < 1) throw InputError("price of anarchy needs at least one player");
  if (n > game.q_max)
    throw InputError("player count " + std::to_string(n) + " outside table range 0.." +
                     std::to_string(game.q_max));

  PoaReport rep;
  rep.n = n;
  rep.n_hat = w.n_hat;
  rep.delta = n > w.n_hat ? n - w.n_hat : w.n_hat - n;
  rep.optimum = game.opt.cost[static_cast<std::size_t>(n)];
  if (rep.optimum.is_unbounded())
    throw InputError("optimum cost is unbounded for " + std::to_string(n) + " players");
  if (rep.optimum == CostValue(0))
    throw InputError("optimum cost is zero for " + std::to_string(n) + " players; ratio undefined");

  std::vector<Path> paths = enumerate_paths(game.tree);
  Enumeration all = enumerate_equilibria(game, w, paths, n, order, cap, workers);
  if (all.equilibria.empty())
    throw std::logic_error("no pure Nash equilibrium found, which ordered protocols cannot lack");

  rep.profiles_checked = all.profiles_checked;
  rep.equilibrium_count = all.equilibria.size();
  rep.worst = all.equilibria[all.worst];
  if (rep.worst.social_modified.is_unbounded())
    throw InputError("worst equilibrium has unbounded cost");
  rep.ratio = rep.worst.social_modified.base.value() / rep.optimum.value();
  rep.bound = std::min(Rat(4 * (rep.delta + 1)), Rat(4 * n));
  rep.satisfied = rep.ratio <= rep.bound;
  return rep;
}

}  // namespace anarchy
