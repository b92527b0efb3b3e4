#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cost.hpp"

namespace anarchy {

// A path through a series-parallel graph, as the edge set it crosses
// (leaf indices, in source-to-sink order).
using Path = std::vector<int>;

// Players per edge, indexed by leaf index.
using LoadProfile = std::vector<long>;

struct SpgNode {
  enum class Kind { edge, series, parallel };
  Kind kind;
  int left = -1;   // child node index (series/parallel)
  int right = -1;
  int leaf = -1;   // leaf index (edge nodes)
};

// Series-parallel graph held as its decomposition tree. Built from the
// expression grammar
//   E ::= "e(" id ")" | "S(" E "," E ")" | "P(" E "," E ")"
// with ids over [A-Za-z0-9_]+ and whitespace allowed between tokens.
// Node 0 is the root; children follow their parent (preorder).
class SpgTree {
 public:
  // Throws InputError with a byte offset on malformed input, and on
  // duplicate edge ids.
  static SpgTree parse(const std::string& expr);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const SpgNode& node(int idx) const { return nodes_[static_cast<std::size_t>(idx)]; }
  static constexpr int root() { return 0; }

  int leaf_count() const { return static_cast<int>(leaf_nodes_.size()); }
  int leaf_node(int leaf) const { return leaf_nodes_[static_cast<std::size_t>(leaf)]; }
  const std::string& leaf_id(int leaf) const { return leaf_ids_[static_cast<std::size_t>(leaf)]; }
  std::optional<int> leaf_of(const std::string& id) const;

  // Canonical re-rendering of the expression (no whitespace).
  std::string expression() const;

 private:
  std::vector<SpgNode> nodes_;
  std::vector<int> leaf_nodes_;
  std::vector<std::string> leaf_ids_;
  std::map<std::string, int> id_to_leaf_;
};

// All source-to-sink paths, deterministically ordered: for a parallel node
// the left child's paths come first; for a series node the cross product is
// emitted with the left factor varying slowest. Throws LimitError past
// `cap` paths (the count can grow exponentially in the tree depth).
std::vector<Path> enumerate_paths(const SpgTree& g, std::size_t cap = 100000);

// Load sitting on one decomposition component. Series children must carry
// equal loads and parallel children add up; throws InputError when the
// profile is inconsistent under `node`.
long component_load(const SpgTree& g, const LoadProfile& loads, int node);

// component_load for every node at once (single bottom-up pass).
std::vector<long> node_loads(const SpgTree& g, const LoadProfile& loads);

// Sums the edge loads induced by a list of paths.
LoadProfile loads_of_paths(const SpgTree& g, const std::vector<Path>& paths);

// Leftmost source-to-sink path with loads[e] < caps[e] on every edge, or
// nullopt when no such path exists.
std::optional<Path> find_residual_path(const SpgTree& g, const LoadProfile& loads,
                                       const LoadProfile& caps);

// Leftmost path with a[e] > b[e] strictly on every edge. Such a path exists
// if and only if the total load of `a` exceeds that of `b` (both profiles
// must be consistent).
std::optional<Path> witness_strict_path(const SpgTree& g, const LoadProfile& a,
                                        const LoadProfile& b);

// Grows the allocation `from` until its total load matches that of `target`,
// never shrinking any component and never overshooting the component-wise
// ceiling max(from, target):
//   from[C] <= result[C] <= max(from[C], target[C])   for every component C.
// Both inputs must be consistent and total(from) <= total(target).
LoadProfile extend_allocation(const SpgTree& g, const LoadProfile& target,
                              const LoadProfile& from);

}  // namespace anarchy
