/* C interface to the damage-plasticity evolution library. All functions
 * return a status code; human-readable diagnostics go into caller-provided
 * buffers which are always NUL-terminated (possibly truncated). Handles are
 * opaque and must be released with the matching free function. */
#ifndef DAMPL_H
#define DAMPL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  DAMPL_OK = 0,
  DAMPL_ERR_VALIDATION = 1, /* bad config, bad arguments, refused instance */
  DAMPL_ERR_SOLVER = 2,     /* stall or non-convergence */
  DAMPL_ERR_VERIFICATION = 3, /* certification found violations */
  DAMPL_ERR_IO = 4,         /* unreadable or unwritable files */
  DAMPL_ERR_INTERNAL = 5
} dampl_status;

typedef struct dampl_scenario dampl_scenario;
typedef struct dampl_trajectory dampl_trajectory;

const char* dampl_version(void);

dampl_status dampl_scenario_load(const char* path, dampl_scenario** out, char* err,
                                 size_t err_len);
dampl_status dampl_scenario_load_text(const char* text, dampl_scenario** out, char* err,
                                      size_t err_len);
void dampl_scenario_free(dampl_scenario* sc);

/* Runs the incremental evolution. On a solver stall the partial trajectory is
 * still returned (status DAMPL_ERR_SOLVER). */
dampl_status dampl_run(const dampl_scenario* sc, dampl_trajectory** out, char* err,
                       size_t err_len);
void dampl_trajectory_free(dampl_trajectory* traj);
int dampl_trajectory_steps(const dampl_trajectory* traj);

dampl_status dampl_write_outputs(const dampl_trajectory* traj, const dampl_scenario* sc,
                                 const char* dir, char* err, size_t err_len);
dampl_status dampl_read_trajectory(const dampl_scenario* sc, const char* dir,
                                   dampl_trajectory** out, char* err, size_t err_len);

/* Certifies a trajectory. Report files are written into out_dir when it is
 * non-NULL; the text report also goes into summary. Returns
 * DAMPL_ERR_VERIFICATION when violations were found. */
dampl_status dampl_verify(const dampl_scenario* sc, const dampl_trajectory* traj,
                          const char* out_dir, char* summary, size_t summary_len, char* err,
                          size_t err_len);

/* Compares the incremental minimizer at the given step (1-based) against the
 * exhaustive quantized search. quantization_gap is the objective increase of
 * the rounded minimizer and bounds the grid resolution effect. */
dampl_status dampl_oracle_compare(const dampl_scenario* sc, int step, int levels,
                                  double* am_objective, double* oracle_objective,
                                  double* quantization_gap, char* err, size_t err_len);

/* Samples the structural inequalities (coercivity, power control, dissipation
 * distance properties, time regularity) on random feasible states. */
dampl_status dampl_check_conditions(const dampl_scenario* sc, int samples, unsigned seed,
                                    char* summary, size_t summary_len, char* err,
                                    size_t err_len);

#ifdef __cplusplus
}
#endif

#endif
