#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "game.hpp"
#include "multicast.hpp"

namespace anarchy {

// In-memory form of an instance file: structurally sound (parse succeeded)
// but not yet semantically validated.
struct ParsedInstance {
  enum class Kind { spg, multicast };
  Kind kind = Kind::spg;

  // kind == spg
  std::string graph;
  std::map<std::string, std::vector<CostValue>> costs;
  long n = 0;
  long n_hat = 0;

  // kind == multicast
  struct RawEdge {
    long u = 0, v = 0;
    Rat weight;
  };
  std::vector<long> vertices;
  std::vector<RawEdge> edges;
  long source = 0;
  std::vector<long> terminals;
  std::vector<long> predicted;
  std::optional<std::map<long, long>> eta;
};

// Throws InputError on malformed JSON, wrong types, bad rational syntax.
ParsedInstance parse_instance(const std::string& json_text);
ParsedInstance load_instance(const std::string& path);

// Canonical JSON rendering (sorted keys, 2-space indent, rationals and
// "inf" as strings).
std::string serialize_instance(const ParsedInstance& inst);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;
};

// Semantic checks; collects problems instead of throwing.
ValidationReport validate_instance(const ParsedInstance& inst);

struct SpgCase {
  SpgGame game;
  long n = 0;
  long n_hat = 0;
};

// Throw InputError on the first semantic problem.
SpgCase compile_spg(const ParsedInstance& inst);
MulticastInstance compile_multicast(const ParsedInstance& inst);

}  // namespace anarchy
