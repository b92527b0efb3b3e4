#include "spg.hpp"

#include <algorithm>
#include <cctype>

#include "error.hpp"

namespace anarchy {

// --- parsing ---------------------------------------------------------------

namespace {

struct ParseState {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("parse error at offset " + std::to_string(pos) + ": " + what);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string edge_id() {
    std::size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        ++pos;
      else
        break;
    }
    if (pos == start) fail("expected edge id");
    return text.substr(start, pos - start);
  }
};

}  // namespace

SpgTree SpgTree::parse(const std::string& expr) {
  SpgTree g;
  ParseState st{expr};

  // Recursive descent; each call claims its node index before recursing so
  // the vector ends up in preorder.
  auto parse_expr = [&](auto&& self) -> int {
    st.skip_ws();
    char c = st.peek();
    int idx = static_cast<int>(g.nodes_.size());
    if (c == 'e') {
      ++st.pos;
      st.skip_ws();
      st.expect('(');
      st.skip_ws();
      std::size_t id_offset = st.pos;
      std::string id = st.edge_id();
      st.skip_ws();
      st.expect(')');
      if (g.id_to_leaf_.count(id)) {
        st.pos = id_offset;
        st.fail("duplicate edge id \"" + id + "\"");
      }
      int leaf = static_cast<int>(g.leaf_ids_.size());
      g.nodes_.push_back(SpgNode{SpgNode::Kind::edge, -1, -1, leaf});
      g.leaf_nodes_.push_back(idx);
      g.leaf_ids_.push_back(id);
      g.id_to_leaf_[id] = leaf;
      return idx;
    }
    if (c == 'S' || c == 'P') {
      ++st.pos;
      auto kind = c == 'S' ? SpgNode::Kind::series : SpgNode::Kind::parallel;
      g.nodes_.push_back(SpgNode{kind, -1, -1, -1});
      st.skip_ws();
      st.expect('(');
      int left = self(self);
      st.skip_ws();
      st.expect(',');
      int right = self(self);
      st.skip_ws();
      st.expect(')');
      g.nodes_[static_cast<std::size_t>(idx)].left = left;
      g.nodes_[static_cast<std::size_t>(idx)].right = right;
      return idx;
    }
    st.fail("expected 'e', 'S' or 'P'");
  };

  parse_expr(parse_expr);
  st.skip_ws();
  if (st.pos != expr.size()) st.fail("trailing characters");
  return g;
}

std::optional<int> SpgTree::leaf_of(const std::string& id) const {
  auto it = id_to_leaf_.find(id);
  if (it == id_to_leaf_.end()) return std::nullopt;
  return it->second;
}

std::string SpgTree::expression() const {
  std::string out;
  auto render = [&](auto&& self, int idx) -> void {
    const SpgNode& nd = node(idx);
    switch (nd.kind) {
      case SpgNode::Kind::edge:
        out += "e(" + leaf_id(nd.leaf) + ")";
        break;
      case SpgNode::Kind::series:
      case SpgNode::Kind::parallel:
        out += nd.kind == SpgNode::Kind::series ? "S(" : "P(";
        self(self, nd.left);
        out += ",";
        self(self, nd.right);
        out += ")";
        break;
    }
  };
  render(render, root());
  return out;
}

// --- paths and loads --------------------------------------------------------

std::vector<Path> enumerate_paths(const SpgTree& g, std::size_t cap) {
  auto walk = [&](auto&& self, int idx) -> std::vector<Path> {
    const SpgNode& nd = g.node(idx);
    if (nd.kind == SpgNode::Kind::edge) return {{nd.leaf}};
    auto left = self(self, nd.left);
    auto right = self(self, nd.right);
    std::vector<Path> out;
    if (nd.kind == SpgNode::Kind::parallel) {
      if (left.size() + right.size() > cap)
        throw LimitError("more than " + std::to_string(cap) + " paths");
      out = std::move(left);
      out.insert(out.end(), right.begin(), right.end());
    } else {
      if (left.size() * right.size() > cap)
        throw LimitError("more than " + std::to_string(cap) + " paths");
      out.reserve(left.size() * right.size());
      for (const Path& l : left)
        for (const Path& r : right) {
          Path p = l;
          p.insert(p.end(), r.begin(), r.end());
          out.push_back(std::move(p));
        }
    }
    return out;
  };
  return walk(walk, SpgTree::root());
}

namespace {

void check_profile_size(const SpgTree& g, const LoadProfile& loads) {
  if (static_cast<int>(loads.size()) != g.leaf_count())
    throw InputError("load profile has " + std::to_string(loads.size()) + " entries, graph has " +
                     std::to_string(g.leaf_count()) + " edges");
}

}  // namespace

long component_load(const SpgTree& g, const LoadProfile& loads, int node) {
  check_profile_size(g, loads);
  auto walk = [&](auto&& self, int idx) -> long {
    const SpgNode& nd = g.node(idx);
    if (nd.kind == SpgNode::Kind::edge) return loads[static_cast<std::size_t>(nd.leaf)];
    long l = self(self, nd.left);
    long r = self(self, nd.right);
    if (nd.kind == SpgNode::Kind::series) {
      if (l != r)
        throw InputError("inconsistent loads: series children carry " + std::to_string(l) +
                         " and " + std::to_string(r));
      return l;
    }
    return l + r;
  };
  return walk(walk, node);
}

std::vector<long> node_loads(const SpgTree& g, const LoadProfile& loads) {
  check_profile_size(g, loads);
  std::vector<long> out(static_cast<std::size_t>(g.node_count()), 0);
  // Children follow their parent in the node vector, so a reverse sweep sees
  // children before parents.
  for (int idx = g.node_count() - 1; idx >= 0; --idx) {
    const SpgNode& nd = g.node(idx);
    auto& slot = out[static_cast<std::size_t>(idx)];
    switch (nd.kind) {
      case SpgNode::Kind::edge:
        slot = loads[static_cast<std::size_t>(nd.leaf)];
        break;
      case SpgNode::Kind::series: {
        long l = out[static_cast<std::size_t>(nd.left)];
        long r = out[static_cast<std::size_t>(nd.right)];
        if (l != r)
          throw InputError("inconsistent loads: series children carry " + std::to_string(l) +
                           " and " + std::to_string(r));
        slot = l;
        break;
      }
      case SpgNode::Kind::parallel:
        slot = out[static_cast<std::size_t>(nd.left)] + out[static_cast<std::size_t>(nd.right)];
        break;
    }
  }
  return out;
}

LoadProfile loads_of_paths(const SpgTree& g, const std::vector<Path>& paths) {
  LoadProfile loads(static_cast<std::size_t>(g.leaf_count()), 0);
  for (const Path& p : paths)
    for (int leaf : p) ++loads[static_cast<std::size_t>(leaf)];
  return loads;
}

std::optional<Path> find_residual_path(const SpgTree& g, const LoadProfile& loads,
                                       const LoadProfile& caps) {
  check_profile_size(g, loads);
  check_profile_size(g, caps);
  auto walk = [&](auto&& self, int idx) -> std::optional<Path> {
    const SpgNode& nd = g.node(idx);
    if (nd.kind == SpgNode::Kind::edge) {
      auto e = static_cast<std::size_t>(nd.leaf);
      if (loads[e] < caps[e]) return Path{nd.leaf};
      return std::nullopt;
    }
    if (nd.kind == SpgNode::Kind::parallel) {
      if (auto left = self(self, nd.left)) return left;
      return self(self, nd.right);
    }
    auto left = self(self, nd.left);
    if (!left) return std::nullopt;
    auto right = self(self, nd.right);
    if (!right) return std::nullopt;
    left->insert(left->end(), right->begin(), right->end());
    return left;
  };
  return walk(walk, SpgTree::root());
}

std::optional<Path> witness_strict_path(const SpgTree& g, const LoadProfile& a,
                                        const LoadProfile& b) {
  check_profile_size(g, a);
  check_profile_size(g, b);
  auto walk = [&](auto&& self, int idx) -> std::optional<Path> {
    const SpgNode& nd = g.node(idx);
    if (nd.kind == SpgNode::Kind::edge) {
      auto e = static_cast<std::size_t>(nd.leaf);
      if (a[e] > b[e]) return Path{nd.leaf};
      return std::nullopt;
    }
    if (nd.kind == SpgNode::Kind::parallel) {
      if (auto left = self(self, nd.left)) return left;
      return self(self, nd.right);
    }
    auto left = self(self, nd.left);
    if (!left) return std::nullopt;
    auto right = self(self, nd.right);
    if (!right) return std::nullopt;
    left->insert(left->end(), right->begin(), right->end());
    return left;
  };
  return walk(walk, SpgTree::root());
}

LoadProfile extend_allocation(const SpgTree& g, const LoadProfile& target,
                              const LoadProfile& from) {
  std::vector<long> tgt = node_loads(g, target);
  std::vector<long> cur = node_loads(g, from);
  if (cur[SpgTree::root()] > tgt[SpgTree::root()])
    throw InputError("extend_allocation: source allocation is larger than the target");

  LoadProfile out(static_cast<std::size_t>(g.leaf_count()), 0);
  // Push `want` players through each component. At a parallel split the left
  // child takes as much as its ceiling allows once the right child's floor is
  // reserved; the interval arithmetic below always admits a split because
  //   low(left)+low(right) <= want <= high(left)+high(right).
  auto assign = [&](auto&& self, int idx, long want) -> void {
    const SpgNode& nd = g.node(idx);
    switch (nd.kind) {
      case SpgNode::Kind::edge:
        out[static_cast<std::size_t>(nd.leaf)] = want;
        break;
      case SpgNode::Kind::series:
        self(self, nd.left, want);
        self(self, nd.right, want);
        break;
      case SpgNode::Kind::parallel: {
        auto li = static_cast<std::size_t>(nd.left);
        auto ri = static_cast<std::size_t>(nd.right);
        long high_l = std::max(cur[li], tgt[li]);
        long low_r = cur[ri];
        long take_l = std::min(high_l, want - low_r);
        self(self, nd.left, take_l);
        self(self, nd.right, want - take_l);
        break;
      }
    }
  };
  assign(assign, SpgTree::root(), tgt[SpgTree::root()]);
  return out;
}

}  // namespace anarchy
