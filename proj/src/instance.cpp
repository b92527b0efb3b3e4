#include "instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace anarchy {

namespace {

using nlohmann::json;

long require_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw InputError(where + " must be an integer");
  return j.get<long>();
}

long require_count(const json& j, const std::string& where) {
  long v = require_integer(j, where);
  if (v < 0) throw InputError(where + " must be non-negative");
  return v;
}

std::vector<long> require_int_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + " must be an array");
  std::vector<long> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(require_integer(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

const json& require_key(const json& j, const char* key, const char* kind) {
  auto it = j.find(key);
  if (it == j.end())
    throw InputError(std::string(kind) + " instance is missing \"" + key + "\"");
  return *it;
}

}  // namespace

ParsedInstance parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("instance file must hold a JSON object");

  ParsedInstance inst;
  const json& kind = require_key(doc, "kind", "the");
  if (!kind.is_string()) throw InputError("\"kind\" must be a string");

  if (kind == "spg") {
    inst.kind = ParsedInstance::Kind::spg;
    const json& graph = require_key(doc, "graph", "spg");
    if (!graph.is_string()) throw InputError("\"graph\" must be a string");
    inst.graph = graph.get<std::string>();

    const json& costs = require_key(doc, "costs", "spg");
    if (!costs.is_object()) throw InputError("\"costs\" must be an object");
    for (auto it = costs.begin(); it != costs.end(); ++it) {
      if (!it.value().is_array())
        throw InputError("costs[" + it.key() + "] must be an array of strings");
      std::vector<CostValue> table;
      table.reserve(it.value().size());
      for (std::size_t i = 0; i < it.value().size(); ++i) {
        const json& cell = it.value()[i];
        if (!cell.is_string())
          throw InputError("costs[" + it.key() + "][" + std::to_string(i) +
                           "] must be a string (\"3\", \"7/2\" or \"inf\")");
        try {
          table.push_back(CostValue::parse(cell.get<std::string>()));
        } catch (const InputError& e) {
          throw InputError("costs[" + it.key() + "][" + std::to_string(i) + "]: " + e.what());
        }
      }
      inst.costs.emplace(it.key(), std::move(table));
    }
    inst.n = require_count(require_key(doc, "n", "spg"), "\"n\"");
    inst.n_hat = require_count(require_key(doc, "n_hat", "spg"), "\"n_hat\"");
    return inst;
  }

  if (kind == "multicast") {
    inst.kind = ParsedInstance::Kind::multicast;
    inst.vertices = require_int_array(require_key(doc, "vertices", "multicast"), "\"vertices\"");
    const json& edges = require_key(doc, "edges", "multicast");
    if (!edges.is_array()) throw InputError("\"edges\" must be an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const json& e = edges[i];
      std::string where = "edges[" + std::to_string(i) + "]";
      if (!e.is_array() || e.size() != 3)
        throw InputError(where + " must be [u, v, weight]");
      ParsedInstance::RawEdge edge;
      edge.u = require_integer(e[0], where + "[0]");
      edge.v = require_integer(e[1], where + "[1]");
      if (!e[2].is_string())
        throw InputError(where + "[2] must be a rational string");
      try {
        edge.weight = parse_rational(e[2].get<std::string>());
      } catch (const InputError& err) {
        throw InputError(where + "[2]: " + err.what());
      }
      inst.edges.push_back(std::move(edge));
    }
    inst.source = require_integer(require_key(doc, "source", "multicast"), "\"source\"");
    inst.terminals = require_int_array(require_key(doc, "terminals", "multicast"), "\"terminals\"");
    inst.predicted = require_int_array(require_key(doc, "predicted", "multicast"), "\"predicted\"");
    if (auto it = doc.find("eta"); it != doc.end() && !it->is_null()) {
      if (!it->is_object()) throw InputError("\"eta\" must be an object");
      std::map<long, long> eta;
      for (auto kv = it->begin(); kv != it->end(); ++kv) {
        long key;
        try {
          Rat parsed = parse_rational(kv.key());
          if (boost::multiprecision::denominator(parsed) != 1)
            throw InputError("not an integer");
          key = static_cast<long>(boost::multiprecision::numerator(parsed));
        } catch (const InputError&) {
          throw InputError("eta key \"" + kv.key() + "\" must be a terminal id");
        }
        eta[key] = require_integer(kv.value(), "eta[" + kv.key() + "]");
      }
      inst.eta = std::move(eta);
    }
    return inst;
  }

  throw InputError("unknown kind \"" + kind.get<std::string>() +
                   "\" (expected \"spg\" or \"multicast\")");
}

ParsedInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const ParsedInstance& inst) {
  json doc;
  if (inst.kind == ParsedInstance::Kind::spg) {
    doc["kind"] = "spg";
    doc["graph"] = inst.graph;
    json costs = json::object();
    for (const auto& [id, table] : inst.costs) {
      json arr = json::array();
      for (const auto& v : table) arr.push_back(v.str());
      costs[id] = std::move(arr);
    }
    doc["costs"] = std::move(costs);
    doc["n"] = inst.n;
    doc["n_hat"] = inst.n_hat;
  } else {
    doc["kind"] = "multicast";
    doc["vertices"] = inst.vertices;
    json edges = json::array();
    for (const auto& e : inst.edges)
      edges.push_back(json::array({e.u, e.v, format_rational(e.weight)}));
    doc["edges"] = std::move(edges);
    doc["source"] = inst.source;
    doc["terminals"] = inst.terminals;
    doc["predicted"] = inst.predicted;
    if (inst.eta) {
      json eta = json::object();
      for (const auto& [t, h] : *inst.eta) eta[std::to_string(t)] = h;
      doc["eta"] = std::move(eta);
    }
  }
  return doc.dump(2) + "\n";
}

namespace {

void validate_spg(const ParsedInstance& inst, ValidationReport& report) {
  SpgTree tree;
  try {
    tree = SpgTree::parse(inst.graph);
  } catch (const InputError& e) {
    report.problems.push_back(std::string("graph: ") + e.what());
    return;
  }

  long q_max = -1;
  for (int leaf = 0; leaf < tree.leaf_count(); ++leaf)
    if (!inst.costs.count(tree.leaf_id(leaf)))
      report.problems.push_back("no cost table for edge \"" + tree.leaf_id(leaf) + "\"");
  for (const auto& [id, table] : inst.costs) {
    if (!tree.leaf_of(id)) {
      report.problems.push_back("cost table \"" + id + "\" does not match any edge");
      continue;
    }
    if (auto defect = validate_table(table))
      report.problems.push_back("cost table \"" + id + "\" invalid at index " +
                                std::to_string(defect->index) + ": " + defect->reason);
    // Track the smallest covered load range; player counts are judged
    // against it even when some table has a defect elsewhere.
    long top = static_cast<long>(table.size()) - 1;
    if (top >= 0) q_max = q_max < 0 ? top : std::min(q_max, top);
  }

  if (inst.n < 1)
    report.problems.push_back("n = " + std::to_string(inst.n) +
                              " but at least one player is required");
  else if (q_max >= 0 && inst.n > q_max)
    report.problems.push_back("n = " + std::to_string(inst.n) +
                              " exceeds the table range 0.." + std::to_string(q_max));
  if (inst.n_hat < 1)
    report.problems.push_back("n_hat = " + std::to_string(inst.n_hat) +
                              " but the prediction must count at least one player");
  else if (q_max >= 0 && inst.n_hat > q_max)
    report.problems.push_back("n_hat = " + std::to_string(inst.n_hat) +
                              " exceeds the table range 0.." + std::to_string(q_max));
  if (!report.problems.empty()) return;

  try {
    compile_spg(inst);
  } catch (const InputError& e) {
    report.problems.push_back(e.what());
  }
}

void validate_multicast(const ParsedInstance& inst, ValidationReport& report) {
  if (inst.vertices.empty()) {
    report.problems.push_back("vertex list is empty");
    return;
  }
  std::vector<long> sorted = inst.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    report.problems.push_back("duplicate vertex id");
  auto known = [&](long v) { return std::binary_search(sorted.begin(), sorted.end(), v); };

  if (!known(inst.source))
    report.problems.push_back("source " + std::to_string(inst.source) + " is not a vertex");
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const auto& e = inst.edges[i];
    std::string where = "edges[" + std::to_string(i) + "]";
    if (!known(e.u) || !known(e.v))
      report.problems.push_back(where + " touches an unknown vertex");
    else if (e.u == e.v)
      report.problems.push_back(where + " is a self-loop");
    if (e.weight <= 0) report.problems.push_back(where + " must have positive weight");
  }

  auto check_set = [&](const std::vector<long>& set, const char* what) {
    std::vector<long> copy = set;
    std::sort(copy.begin(), copy.end());
    if (std::adjacent_find(copy.begin(), copy.end()) != copy.end())
      report.problems.push_back(std::string("duplicate vertex in ") + what);
    for (long v : set) {
      if (!known(v))
        report.problems.push_back(std::string(what) + " lists unknown vertex " + std::to_string(v));
      else if (v == inst.source)
        report.problems.push_back(std::string(what) + " must not include the source");
    }
  };
  check_set(inst.terminals, "terminals");
  check_set(inst.predicted, "predicted");

  if (inst.eta) {
    std::vector<long> terminals = inst.terminals;
    std::sort(terminals.begin(), terminals.end());
    for (long t : terminals)
      if (!inst.eta->count(t))
        report.problems.push_back("eta is missing terminal " + std::to_string(t));
    for (const auto& [t, h] : *inst.eta) {
      if (!std::binary_search(terminals.begin(), terminals.end(), t))
        report.problems.push_back("eta key " + std::to_string(t) + " is not a terminal");
      bool target_ok = h == inst.source ||
                       std::find(inst.predicted.begin(), inst.predicted.end(), h) !=
                           inst.predicted.end();
      if (!target_ok)
        report.problems.push_back("eta[" + std::to_string(t) +
                                  "] must be a predicted vertex or the source");
    }
  }
  if (!report.problems.empty()) return;

  try {
    MulticastInstance mc = compile_multicast(inst);
    metric_closure(mc);
  } catch (const InputError& e) {
    report.problems.push_back(e.what());
  }
}

}  // namespace

ValidationReport validate_instance(const ParsedInstance& inst) {
  ValidationReport report;
  if (inst.kind == ParsedInstance::Kind::spg)
    validate_spg(inst, report);
  else
    validate_multicast(inst, report);
  report.ok = report.problems.empty();
  return report;
}

SpgCase compile_spg(const ParsedInstance& inst) {
  if (inst.kind != ParsedInstance::Kind::spg) throw InputError("not an spg instance");
  SpgTree tree = SpgTree::parse(inst.graph);
  std::vector<CostTable> tables;
  tables.reserve(static_cast<std::size_t>(tree.leaf_count()));
  for (int leaf = 0; leaf < tree.leaf_count(); ++leaf) {
    auto it = inst.costs.find(tree.leaf_id(leaf));
    if (it == inst.costs.end())
      throw InputError("no cost table for edge \"" + tree.leaf_id(leaf) + "\"");
    try {
      tables.emplace_back(it->second);
    } catch (const InputError& e) {
      throw InputError("cost table \"" + tree.leaf_id(leaf) + "\": " + e.what());
    }
  }
  for (const auto& [id, table] : inst.costs)
    if (!tree.leaf_of(id))
      throw InputError("cost table \"" + id + "\" does not match any edge");

  SpgCase out{SpgGame::build(std::move(tree), std::move(tables)), inst.n, inst.n_hat};
  if (out.n < 1) throw InputError("n = " + std::to_string(out.n) + " but at least one player is required");
  if (out.n_hat < 1)
    throw InputError("n_hat = " + std::to_string(out.n_hat) +
                     " but the prediction must count at least one player");
  if (out.n > out.game.q_max)
    throw InputError("n = " + std::to_string(out.n) + " exceeds the table range 0.." +
                     std::to_string(out.game.q_max));
  if (out.n_hat > out.game.q_max)
    throw InputError("n_hat = " + std::to_string(out.n_hat) + " exceeds the table range 0.." +
                     std::to_string(out.game.q_max));
  return out;
}

MulticastInstance compile_multicast(const ParsedInstance& inst) {
  if (inst.kind != ParsedInstance::Kind::multicast) throw InputError("not a multicast instance");
  MulticastInstance mc;
  mc.vertex_ids = inst.vertices;
  std::sort(mc.vertex_ids.begin(), mc.vertex_ids.end());
  if (std::adjacent_find(mc.vertex_ids.begin(), mc.vertex_ids.end()) != mc.vertex_ids.end())
    throw InputError("duplicate vertex id");

  auto dense = [&](long label, const char* what) {
    auto it = std::lower_bound(mc.vertex_ids.begin(), mc.vertex_ids.end(), label);
    if (it == mc.vertex_ids.end() || *it != label)
      throw InputError(std::string(what) + " refers to unknown vertex " + std::to_string(label));
    return static_cast<int>(it - mc.vertex_ids.begin());
  };

  mc.source = dense(inst.source, "source");
  for (const auto& e : inst.edges) {
    if (e.weight <= 0) throw InputError("edge weights must be positive");
    int u = dense(e.u, "edge"), v = dense(e.v, "edge");
    if (u == v) throw InputError("self-loops are not allowed");
    mc.edges.push_back({std::min(u, v), std::max(u, v), e.weight});
  }
  for (long t : inst.terminals) {
    int v = dense(t, "terminals");
    if (v == mc.source) throw InputError("terminals must not include the source");
    mc.terminals.push_back(v);
  }
  for (long h : inst.predicted) {
    int v = dense(h, "predicted");
    if (v == mc.source) throw InputError("predicted must not include the source");
    mc.predicted.push_back(v);
  }
  std::sort(mc.terminals.begin(), mc.terminals.end());
  if (std::adjacent_find(mc.terminals.begin(), mc.terminals.end()) != mc.terminals.end())
    throw InputError("duplicate terminal");
  std::sort(mc.predicted.begin(), mc.predicted.end());
  if (std::adjacent_find(mc.predicted.begin(), mc.predicted.end()) != mc.predicted.end())
    throw InputError("duplicate predicted vertex");

  if (inst.eta) {
    std::vector<int> eta;
    eta.reserve(mc.terminals.size());
    for (int t : mc.terminals) {
      auto it = inst.eta->find(mc.vertex_ids[static_cast<std::size_t>(t)]);
      if (it == inst.eta->end())
        throw InputError("eta is missing terminal " +
                         std::to_string(mc.vertex_ids[static_cast<std::size_t>(t)]));
      int target = dense(it->second, "eta");
      if (target != mc.source &&
          !std::binary_search(mc.predicted.begin(), mc.predicted.end(), target))
        throw InputError("eta[" + std::to_string(it->first) +
                         "] must be a predicted vertex or the source");
      eta.push_back(target);
    }
    if (inst.eta->size() != mc.terminals.size())
      throw InputError("eta has entries for unknown terminals");
    mc.eta = std::move(eta);
  }
  return mc;
}

}  // namespace anarchy
