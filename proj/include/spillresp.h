/*
 * C API for the spill response siting and allocation library.
 *
 * All functions return SR_OK (0) on success or a nonzero status; the status
 * values double as process exit codes for the CLI. sr_last_error() returns a
 * thread-local message for the most recent failure. Strings returned through
 * char** out-parameters are heap-allocated; release them with sr_string_free.
 * Handles are opaque; release them with the matching *_free function.
 */
#ifndef SPILLRESP_H
#define SPILLRESP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SR_OK 0
#define SR_ERR_VALIDATION 2
#define SR_ERR_SOLVER 3
#define SR_ERR_IO 4
#define SR_ERR_ARGUMENT 5
#define SR_ERR_INTERNAL 6

typedef struct sr_instance sr_instance;
typedef struct sr_solution sr_solution;
typedef struct sr_voi sr_voi;
typedef struct sr_sweep sr_sweep;

const char* sr_version(void);
const char* sr_last_error(void);
void sr_string_free(char* s);

/* Bundle loading: dir must contain stations.csv, spills.csv, resources.csv,
 * config.json, and optionally scenarios.json. */
int sr_instance_load(const char* bundle_dir, sr_instance** out);
void sr_instance_free(sr_instance* inst);
int sr_instance_counts(const sr_instance* inst, int* stations, int* spills, int* resources,
                       int* scenarios);
/* Itemized DataCheck diagnostics as a JSON array; returns SR_ERR_VALIDATION
 * when any diagnostic is error-level. */
int sr_instance_validate(const sr_instance* inst, char** diagnostics_json);

/* Fits the volume distribution, samples scenarios, validates them against the
 * historical record, and writes out_path (scenarios.json schema). n_stochastic
 * <= 0 keeps the config value; report_json (optional) receives fit, KS, and
 * validation statistics. */
int sr_generate_scenarios(const char* bundle_dir, uint64_t seed, int n_stochastic,
                          const char* out_path, char** report_json);

/* weights4 is [k1, omega1, omega2, omega3] (k2 = 1 - k1), or NULL to use the
 * bundle config. Runs the validate-solve-repair driver. */
int sr_solve(const sr_instance* inst, const double* weights4, sr_solution** out);
void sr_solution_free(sr_solution* sol);
double sr_solution_objective(const sr_solution* sol);
int sr_solution_station_open(const sr_solution* sol, int station_index);
int sr_solution_json(const sr_solution* sol, char** json);
int sr_solution_emit_reports(const sr_instance* inst, const sr_solution* sol,
                             const char* outdir);

/* Full value-of-information protocol: RP, per-scenario wait-and-see, EVP, EEV. */
int sr_evaluate(const sr_instance* inst, const double* weights4, sr_voi** out);
void sr_voi_free(sr_voi* voi);
int sr_voi_json(const sr_voi* voi, char** json);
int sr_voi_emit_reports(const sr_voi* voi, const char* outdir);

/* Weight-sensitivity sweep. k1_step and omega_step <= 0 use the 0.1 defaults;
 * jobs <= 1 runs single-threaded. */
int sr_sweep_run(const sr_instance* inst, double k1_step, double omega_step, int jobs,
                 sr_sweep** out);
void sr_sweep_free(sr_sweep* sweep);
int sr_sweep_size(const sr_sweep* sweep);
int sr_sweep_emit_reports(const sr_sweep* sweep, const char* outdir);
/* Pareto frontier of an existing sweep.csv; writes pareto.csv and pareto.svg. */
int sr_pareto_from_csv(const char* sweep_csv, const char* outdir);

/* Fixed-width MPS export of the formulated model (maximization noted in a
 * comment record). */
int sr_export_mps(const sr_instance* inst, const double* weights4, const char* path);

/* Reproducibility manifest (command, input hashes, seed, version, timestamp)
 * written to outdir/manifest.json. */
int sr_emit_manifest(const char* command, const char* bundle_dir, uint64_t seed,
                     const char* outdir);

#ifdef __cplusplus
}
#endif

#endif /* SPILLRESP_H */
