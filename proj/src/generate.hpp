#pragma once

#include <random>
#include <vector>

#include "instance.hpp"

namespace anarchy {

// Deterministic RNG: mt19937_64 plus hand-rolled draws, so generated
// instances are byte-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(unsigned long long seed) : engine_(seed) {}

  unsigned long long next() { return engine_(); }

  // Inclusive on both ends.
  long uniform(long lo, long hi) {
    auto span = static_cast<unsigned long long>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  bool chance(double p) {
    if (p <= 0) return false;
    if (p >= 1) return true;
    return next() < static_cast<unsigned long long>(p * 18446744073709551616.0);
  }

 private:
  std::mt19937_64 engine_;
};

struct SpgGenParams {
  long seed = 1;
  int max_edges = 8;
  long max_cost = 100;
  double cap_fraction = 0.3;  // chance an edge is capacitated
  long q_max = 10;            // table length; loads 0..q_max
  int max_paths = 0;          // 0 = unlimited; otherwise redraw until satisfied
  int n_max = 10;             // n drawn from 1..n_max
  int nhat_delta = 3;         // n_hat drawn from max(1, n-delta)..min(q_max, n+delta)
};

// Random series-parallel instance. The leftmost path is kept free of
// capacities so every player count up to q_max stays routable, and every
// edge costs at least 1 for its first user (the single-player optimum is
// positive, so the instance always normalizes).
ParsedInstance gen_spg_instance(const SpgGenParams& params);

struct McGenParams {
  long seed = 1;
  int min_vertices = 4;
  int max_vertices = 12;
  int max_terminals = 8;
  int radius = 1;           // predictions land within this many hops of their terminal
  long max_weight = 20;
  int max_extra_edges = 2;  // edges beyond the random spanning tree
  double drop_prob = 0;     // unknown-set: chance to drop each predicted point
  double add_prob = 0;      // unknown-set: chance to add each spurious point
};

// Random connected multicast instance. With drop_prob = add_prob = 0 the
// instance is known-set: eta maps each terminal to its perturbed copy.
// Otherwise the predicted set is perturbed further and eta is omitted.
ParsedInstance gen_multicast_instance(const McGenParams& params);

}  // namespace anarchy
