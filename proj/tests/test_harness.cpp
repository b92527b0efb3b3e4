#include <doctest.h>

#include <cstdlib>

#include "braess.hpp"
#include "campaign.hpp"
#include "csv.hpp"
#include "error.hpp"
#include "generate.hpp"
#include "instance.hpp"

using namespace anarchy;

TEST_CASE("csv fields quote only when needed") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("line\nbreak") == "\"line\nbreak\"");
  CHECK(csv_row({"a", "b,c"}) == "a,\"b,c\"\n");
}

TEST_CASE("generators are deterministic in the seed") {
  SpgGenParams spg;
  spg.seed = 7;
  CHECK(serialize_instance(gen_spg_instance(spg)) == serialize_instance(gen_spg_instance(spg)));
  SpgGenParams other = spg;
  other.seed = 8;
  CHECK(serialize_instance(gen_spg_instance(spg)) != serialize_instance(gen_spg_instance(other)));

  McGenParams mc;
  mc.seed = 7;
  CHECK(serialize_instance(gen_multicast_instance(mc)) ==
        serialize_instance(gen_multicast_instance(mc)));
}

TEST_CASE("generated instances round-trip through parse and serialize") {
  for (long seed = 1; seed <= 25; ++seed) {
    SpgGenParams spg;
    spg.seed = seed;
    std::string text = serialize_instance(gen_spg_instance(spg));
    CHECK(serialize_instance(parse_instance(text)) == text);

    McGenParams mc;
    mc.seed = seed;
    mc.drop_prob = seed % 2 ? 0.4 : 0.0;
    std::string mc_text = serialize_instance(gen_multicast_instance(mc));
    CHECK(serialize_instance(parse_instance(mc_text)) == mc_text);
  }
}

TEST_CASE("generated instances validate cleanly") {
  for (long seed = 1; seed <= 25; ++seed) {
    SpgGenParams spg;
    spg.seed = seed;
    CHECK(validate_instance(gen_spg_instance(spg)).ok);
    McGenParams mc;
    mc.seed = seed;
    mc.add_prob = seed % 3 ? 0.0 : 0.3;
    CHECK(validate_instance(gen_multicast_instance(mc)).ok);
  }
}

TEST_CASE("generator respects the path budget") {
  SpgGenParams params;
  params.seed = 5;
  params.max_paths = 4;
  for (long seed = 1; seed <= 15; ++seed) {
    params.seed = seed;
    SpgTree g = SpgTree::parse(gen_spg_instance(params).graph);
    CHECK(enumerate_paths(g).size() <= 4);
  }
}

TEST_CASE("capacity-free generation keeps every table finite") {
  SpgGenParams params;
  params.seed = 11;
  params.cap_fraction = 0;
  ParsedInstance inst = gen_spg_instance(params);
  for (const auto& [id, table] : inst.costs)
    for (const auto& v : table) CHECK_FALSE(v.is_unbounded());
}

TEST_CASE("validation pinpoints instance problems") {
  ParsedInstance inst;
  inst.kind = ParsedInstance::Kind::spg;
  inst.graph = "P(e(a),e(b))";
  inst.costs["a"] = {CostValue(0), CostValue(2), CostValue(1)};
  inst.costs["b"] = {CostValue(0), CostValue(1)};
  inst.n = 9;
  inst.n_hat = 0;
  ValidationReport report = validate_instance(inst);
  CHECK_FALSE(report.ok);
  bool names_table = false, names_n = false, names_nhat = false;
  for (const auto& p : report.problems) {
    names_table = names_table || p.find("\"a\"") != std::string::npos;
    names_n = names_n || p.find("n ") == 0 || p.find("\"n\"") != std::string::npos;
    names_nhat = names_nhat || p.find("n_hat") != std::string::npos;
  }
  CHECK(names_table);
  CHECK(names_n);
  CHECK(names_nhat);
}

TEST_CASE("multicast validation names the offending pieces") {
  ParsedInstance inst;
  inst.kind = ParsedInstance::Kind::multicast;
  inst.vertices = {0, 1, 1};
  inst.edges = {{0, 0, Rat(1)}, {0, 9, Rat(1)}, {0, 1, Rat(0)}};
  inst.source = 0;
  inst.terminals = {0, 7};
  inst.predicted = {1};
  ValidationReport report = validate_instance(inst);
  CHECK_FALSE(report.ok);
  CHECK(report.problems.size() >= 4);
}

TEST_CASE("spg campaign rows satisfy their bounds") {
  SpgCampaignParams params;
  params.seed_lo = 1;
  params.seed_hi = 25;
  params.gen.max_edges = 5;
  params.gen.max_paths = 5;
  params.gen.n_max = 4;
  params.gen.q_max = 6;
  params.workers = 2;
  auto rows = run_spg_campaign(params);
  REQUIRE(rows.size() == 25);
  CHECK(rows_all_satisfied(rows));
  for (const auto& row : rows) {
    CHECK(row.status == "ok");
    CHECK(row.bound_satisfied == (row.ratio <= row.bound));
    if (row.delta == 0) CHECK(row.ratio <= Rat(4));
  }
  std::string csv = experiment_csv(rows);
  CHECK(csv.rfind("instance_id,n,n_hat,D,delta,pne_cost,opt,ratio,bound,bound_satisfied,"
                  "runtime_ms,status\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);
}

TEST_CASE("multicast campaign rows satisfy their bounds") {
  McCampaignParams params;
  params.seed_lo = 1;
  params.seed_hi = 10;
  params.gen.max_vertices = 9;
  params.gen.max_terminals = 5;
  params.radii = {0, 2};
  auto rows = run_multicast_campaign(params);
  REQUIRE(rows.size() == 20);
  CHECK(rows_all_satisfied(rows));
  for (const auto& row : rows) {
    CHECK(row.bound_satisfied == (row.ratio <= row.bound || row.status == "flagged-log"));
    if (row.instance_id.ends_with("-r0")) {
      CHECK(row.distance_error == Rat(0));
      CHECK(row.ratio <= Rat(4));
    }
  }
}

TEST_CASE("worker resolution prefers the explicit request") {
  CHECK(resolve_workers(3) == 3);
  setenv("ANARCHY_WORKERS", "2", 1);
  CHECK(resolve_workers(0) == 2);
  setenv("ANARCHY_WORKERS", "junk", 1);
  CHECK(resolve_workers(0) >= 1);
  unsetenv("ANARCHY_WORKERS");
  CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("braess instance defeats every online strategy at k=100") {
  BraessReport report = braess_negative_test(100);
  CHECK(report.optimum_one == Rat(3));
  CHECK(report.optimum_two == Rat(202));
  REQUIRE(report.strategies.size() == 9);
  CHECK(report.best_ratio == Rat(101, 3));
  CHECK_FALSE(report.four_competitive_possible);
  for (const auto& s : report.strategies) CHECK(s.worst_ratio > Rat(4));
  const BraessStrategy& best = report.strategies[report.best_index];
  CHECK(best.worst_ratio == Rat(101, 3));
  CHECK(best.first_path == 1);
  CHECK(best.second_path == 2);
}

TEST_CASE("small braess parameters admit four-competitive play") {
  BraessReport report = braess_negative_test(2);
  CHECK(report.optimum_one == Rat(3));
  CHECK(report.optimum_two == Rat(6));
  CHECK(report.best_ratio == Rat(1));
  CHECK(report.four_competitive_possible);
  CHECK_THROWS_AS(braess_negative_test(0), InputError);
}
