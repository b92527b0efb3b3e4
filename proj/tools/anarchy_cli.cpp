// Command line front end. Everything goes through the C interface in
// anarchy.h; reports are CSV on stdout (or --out), diagnostics on stderr.
// Exit codes: 0 success, 1 input or usage error, 2 a bound check failed
// (the report is still written).
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anarchy.h"

namespace {

int status_to_exit(anarchy_status s) {
  switch (s) {
    case ANARCHY_OK:
      return 0;
    case ANARCHY_BOUND_VIOLATION:
      return 2;
    default:
      return 1;
  }
}

void note_failure(const std::string& context, anarchy_status s) {
  if (s == ANARCHY_OK) return;
  if (s == ANARCHY_BOUND_VIOLATION)
    std::cerr << context << ": bound violated, see the report\n";
  else
    std::cerr << context << ": " << anarchy_last_error() << "\n";
}

// Writes the report (when one was produced) and frees it.
int finish(anarchy_status s, char* csv, const std::string& out_path) {
  bool wrote = true;
  if (csv) {
    if (out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      f << csv;
      wrote = f.good();
      if (!wrote) std::cerr << "cannot write " << out_path << "\n";
    }
  }
  anarchy_string_free(csv);
  return wrote ? status_to_exit(s) : 1;
}

struct InstanceHandle {
  anarchy_instance* ptr = nullptr;
  InstanceHandle() = default;
  InstanceHandle(const InstanceHandle&) = delete;
  InstanceHandle& operator=(const InstanceHandle&) = delete;
  ~InstanceHandle() { anarchy_instance_free(ptr); }
};

bool load(const std::string& file, InstanceHandle& h) {
  anarchy_status s = anarchy_instance_load(file.c_str(), &h.ptr);
  if (s != ANARCHY_OK) {
    std::cerr << file << ": " << anarchy_last_error() << "\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"allocation, equilibria and proven-bound checks for prediction-augmented "
               "cost-sharing games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", anarchy_version());

  int exit_code = 0;
  std::string file, out;

  auto* validate = app.add_subcommand("validate", "check an instance file");
  validate->add_option("file", file, "instance JSON file")->required();
  validate->add_option("--out", out, "write the report here instead of stdout");
  validate->callback([&] {
    InstanceHandle h;
    if (!load(file, h)) {
      exit_code = 1;
      return;
    }
    char* csv = nullptr;
    anarchy_status s = anarchy_validate_report(h.ptr, &csv);
    if (s == ANARCHY_OK)
      std::cerr << file << ": ok\n";
    else
      std::cerr << file << ": " << anarchy_last_error() << "\n";
    exit_code = finish(s, csv, out);
  });

  long q_limit = -1;
  auto* opt = app.add_subcommand("opt", "optimal allocations per player count");
  opt->add_option("file", file, "instance JSON file")->required();
  opt->add_option("--q", q_limit, "largest player count to report (default: table range)");
  opt->add_option("--out", out, "write the report here instead of stdout");
  opt->callback([&] {
    InstanceHandle h;
    if (!load(file, h)) {
      exit_code = 1;
      return;
    }
    char* csv = nullptr;
    anarchy_status s = anarchy_optimum_csv(h.ptr, q_limit, &csv);
    note_failure(file, s);
    exit_code = finish(s, csv, out);
  });

  long players = -1;
  auto* gwtf = app.add_subcommand("gwtf", "online allocation trace");
  gwtf->add_option("file", file, "instance JSON file")->required();
  gwtf->add_option("--n", players, "players to admit (default: the instance's n)");
  gwtf->add_option("--out", out, "write the report here instead of stdout");
  gwtf->callback([&] {
    InstanceHandle h;
    if (!load(file, h)) {
      exit_code = 1;
      return;
    }
    char* csv = nullptr;
    anarchy_status s = anarchy_online_csv(h.ptr, players, &csv);
    note_failure(file, s);
    exit_code = finish(s, csv, out);
  });

  bool exhaustive = false;
  long cap = 0;
  auto* equilibrium = app.add_subcommand("equilibrium", "equilibria under the penalty mechanism");
  equilibrium->add_option("file", file, "instance JSON file")->required();
  equilibrium->add_flag("--exhaustive", exhaustive, "enumerate every profile");
  equilibrium->add_option("--cap", cap, "profile budget for --exhaustive (default 2000000)");
  equilibrium->add_option("--out", out, "write the report here instead of stdout");
  equilibrium->callback([&] {
    InstanceHandle h;
    if (!load(file, h)) {
      exit_code = 1;
      return;
    }
    char* csv = nullptr;
    anarchy_status s = anarchy_equilibrium_csv(h.ptr, exhaustive ? 1 : 0, cap, &csv);
    note_failure(file, s);
    exit_code = finish(s, csv, out);
  });

  auto* poa = app.add_subcommand("poa", "worst equilibrium against the proven bound");
  poa->add_option("file", file, "instance JSON file")->required();
  poa->add_option("--cap", cap, "profile budget (default 2000000)");
  poa->add_option("--out", out, "write the report here instead of stdout");
  poa->callback([&] {
    InstanceHandle h;
    if (!load(file, h)) {
      exit_code = 1;
      return;
    }
    char* csv = nullptr;
    anarchy_status s = anarchy_poa_csv(h.ptr, cap, &csv);
    note_failure(file, s);
    exit_code = finish(s, csv, out);
  });

  bool best_error = false;
  auto* multicast = app.add_subcommand("multicast", "greedy equilibrium and bound checks");
  multicast->add_option("file", file, "instance JSON file")->required();
  multicast->add_flag("--best-error", best_error,
                      "search the error-minimizing assignment when the file has none");
  multicast->add_option("--out", out, "write the report here instead of stdout");
  multicast->callback([&] {
    InstanceHandle h;
    if (!load(file, h)) {
      exit_code = 1;
      return;
    }
    char* csv = nullptr;
    anarchy_status s = anarchy_multicast_csv(h.ptr, best_error ? 1 : 0, &csv);
    note_failure(file, s);
    exit_code = finish(s, csv, out);
  });

  std::string kind, seeds = "1:200";
  std::vector<int> radii;
  anarchy_spg_params spg_params;
  anarchy_spg_params_default(&spg_params);
  anarchy_mc_params mc_params;
  anarchy_mc_params_default(&mc_params);
  int workers = 0;
  auto* experiment = app.add_subcommand("experiment", "seeded campaign over random instances");
  experiment->add_option("kind", kind, "spg or multicast")
      ->required()
      ->check(CLI::IsMember({"spg", "multicast"}));
  experiment->add_option("--seeds", seeds, "seed range lo:hi (default 1:200)");
  experiment->add_option("--out", out, "write the CSV here instead of stdout");
  experiment->add_option("--workers", workers, "worker threads (default: ANARCHY_WORKERS, then hardware)");
  experiment->add_option("--max-edges", spg_params.max_edges, "spg: tree size cap");
  experiment->add_option("--max-cost", spg_params.max_cost, "spg: largest marginal cost");
  experiment->add_option("--cap-fraction", spg_params.cap_fraction, "spg: capacitated edge probability");
  experiment->add_option("--q-max", spg_params.q_max, "spg: cost table range");
  experiment->add_option("--max-paths", spg_params.max_paths, "spg: path budget (0 = unconstrained)");
  experiment->add_option("--n-max", spg_params.n_max, "spg: player count cap");
  experiment->add_option("--nhat-delta", spg_params.nhat_delta, "spg: |n - n_hat| cap");
  experiment->add_option("--enum-cap", spg_params.enum_cap, "spg: profile budget per instance");
  experiment->add_option("--min-vertices", mc_params.min_vertices, "multicast: smallest graph");
  experiment->add_option("--max-vertices", mc_params.max_vertices, "multicast: largest graph");
  experiment->add_option("--max-terminals", mc_params.max_terminals, "multicast: terminal cap");
  experiment->add_option("--max-weight", mc_params.max_weight, "multicast: largest edge weight");
  experiment->add_option("--extra-edges", mc_params.max_extra_edges,
                         "multicast: extra edges beyond the spanning tree");
  experiment->add_option("--drop-prob", mc_params.drop_prob,
                         "multicast: chance a predicted terminal is dropped (unknown-set mode)");
  experiment->add_option("--add-prob", mc_params.add_prob,
                         "multicast: chance a spurious prediction is added (unknown-set mode)");
  experiment->add_option("--radii", radii, "multicast: perturbation radii (default 0,1,2)")
      ->delimiter(',');
  experiment->callback([&] {
    long lo = 0, hi = 0;
    char trailing = 0;
    if (std::sscanf(seeds.c_str(), "%ld:%ld%c", &lo, &hi, &trailing) != 2 || lo > hi) {
      std::cerr << "--seeds wants lo:hi with lo <= hi, got " << seeds << "\n";
      exit_code = 1;
      return;
    }
    char* csv = nullptr;
    anarchy_status s;
    if (kind == "spg") {
      spg_params.seed_lo = lo;
      spg_params.seed_hi = hi;
      spg_params.workers = workers;
      s = anarchy_spg_campaign_csv(&spg_params, &csv);
    } else {
      mc_params.seed_lo = lo;
      mc_params.seed_hi = hi;
      mc_params.workers = workers;
      if (!radii.empty()) {
        mc_params.radii = radii.data();
        mc_params.radii_len = static_cast<long>(radii.size());
      }
      s = anarchy_mc_campaign_csv(&mc_params, &csv);
    }
    note_failure("experiment " + kind, s);
    exit_code = finish(s, csv, out);
  });

  long k = 100;
  auto* braess = app.add_subcommand("braess", "online lower bound on the fixed four-vertex graph");
  braess->add_option("--k", k, "cost parameter (default 100)");
  braess->add_option("--out", out, "write the report here instead of stdout");
  braess->callback([&] {
    char* csv = nullptr;
    anarchy_status s = anarchy_braess_csv(k, &csv);
    note_failure("braess", s);
    exit_code = finish(s, csv, out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  return exit_code;
}
