/* C interface for the anarchy engine.
 *
 * All functions return an anarchy_status; output strings are heap-allocated
 * CSV reports that the caller releases with anarchy_string_free. Instances
 * are opaque handles released with anarchy_instance_free. On any failure
 * anarchy_last_error() describes the problem for the calling thread.
 */
#ifndef ANARCHY_H
#define ANARCHY_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum anarchy_status {
  ANARCHY_OK = 0,
  ANARCHY_ERR_INPUT = 1,      /* malformed or out-of-range input */
  ANARCHY_BOUND_VIOLATION = 2, /* report produced but a guarantee failed */
  ANARCHY_ERR_INTERNAL = 3,
} anarchy_status;

typedef struct anarchy_instance anarchy_instance;

const char* anarchy_version(void);

/* Message for the most recent failure on this thread, or "" if none. */
const char* anarchy_last_error(void);

anarchy_status anarchy_instance_load(const char* path, anarchy_instance** out);
anarchy_status anarchy_instance_parse(const char* json_text, anarchy_instance** out);
void anarchy_instance_free(anarchy_instance* inst);

void anarchy_string_free(char* s);

/* Validation report: one CSV row per problem, header only when clean.
 * Returns ANARCHY_ERR_INPUT when problems were found (report still set). */
anarchy_status anarchy_validate_report(const anarchy_instance* inst, char** out_csv);

/* Optimum cost and allocation per player count 0..q_max (-1 = table limit). */
anarchy_status anarchy_optimum_csv(const anarchy_instance* inst, long q_max, char** out_csv);

/* Online allocation trace for n players (-1 = the instance's n). */
anarchy_status anarchy_online_csv(const anarchy_instance* inst, long n, char** out_csv);

/* Equilibria under the penalty mechanism. With exhaustive=0 only the
 * sequential best-response equilibrium is reported; otherwise all profiles
 * up to `cap` are enumerated. */
anarchy_status anarchy_equilibrium_csv(const anarchy_instance* inst, int exhaustive, long cap,
                                       char** out_csv);

/* Worst-equilibrium ratio against the proven guarantee. Returns
 * ANARCHY_BOUND_VIOLATION if the ratio exceeds the bound (report still set). */
anarchy_status anarchy_poa_csv(const anarchy_instance* inst, long cap, char** out_csv);

/* Multicast equilibrium, prediction errors and bound checks. With
 * with_best_error nonzero the minimising assignment is computed even when
 * the instance carries none. Returns ANARCHY_BOUND_VIOLATION when a hard
 * bound fails. */
anarchy_status anarchy_multicast_csv(const anarchy_instance* inst, int with_best_error,
                                     char** out_csv);

/* Lower-bound construction on the fixed four-vertex graph with parameter k:
 * per-strategy worst-case ratios and the best achievable one. */
anarchy_status anarchy_braess_csv(long k, char** out_csv);

typedef struct anarchy_spg_params {
  long seed_lo, seed_hi;
  long max_edges;    /* tree size cap */
  long max_cost;     /* largest marginal cost drawn */
  double cap_fraction; /* probability an edge is capacitated */
  long q_max;        /* table length */
  long max_paths;    /* 0 = unconstrained; else regenerate until met */
  long n_max;        /* player count upper bound */
  long nhat_delta;   /* |n - n_hat| upper bound */
  long enum_cap;     /* profile budget before sequential fallback */
  int workers;       /* 0 = ANARCHY_WORKERS env, then hardware */
} anarchy_spg_params;

void anarchy_spg_params_default(anarchy_spg_params* p);

anarchy_status anarchy_spg_campaign_csv(const anarchy_spg_params* params, char** out_csv);

typedef struct anarchy_mc_params {
  long seed_lo, seed_hi;
  long min_vertices, max_vertices;
  long max_terminals;
  long max_weight;
  long max_extra_edges;
  double drop_prob, add_prob; /* both 0 = known-set instances */
  const int* radii;           /* perturbation radii, one batch per entry */
  long radii_len;
  int workers;
} anarchy_mc_params;

void anarchy_mc_params_default(anarchy_mc_params* p);

anarchy_status anarchy_mc_campaign_csv(const anarchy_mc_params* params, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* ANARCHY_H */
