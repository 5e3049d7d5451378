#ifndef GOODWINNET_H
#define GOODWINNET_H

/*
 * C API of the coupled-oscillator analysis and simulation library.
 *
 * Conventions:
 *   - every fallible call returns a gw_status; out-parameters are written
 *     only on GW_OK unless documented otherwise
 *   - opaque handles (gw_topology, gw_trajectory) are freed with the
 *     matching *_free call; handles are immutable and safe to share
 *     between threads
 *   - matrices are row-major; stacked states are laid out x1[0..n) x2[0..n)
 *     x3[0..n)
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GW_API __declspec(dllexport)
#else
#define GW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gw_status {
    GW_OK = 0,
    GW_ERR_NULL_POINTER = 1,
    GW_ERR_INVALID_ARGUMENT = 2,
    GW_ERR_INVALID_TOPOLOGY = 3,
    GW_ERR_DISCONNECTED = 4,
    GW_ERR_DIMENSION_MISMATCH = 5,
    GW_ERR_NOT_OSCILLATORY = 6,
    GW_ERR_NO_CONVERGENCE = 7,
    GW_ERR_DIVERGED = 8,
    GW_ERR_INTERNAL = 9
} gw_status;

GW_API const char* gw_status_string(gw_status status);
GW_API const char* gw_version(void);

/* ---- parameters ------------------------------------------------------- */

typedef struct gw_dimensional_params {
    double v0, v1, v2; /* transcription / translation / catalysis rates */
    double k1, k2, k3; /* degradation rate constants */
    double km;         /* binding-scale concentration */
    double p;          /* Hill coefficient */
} gw_dimensional_params;

typedef struct gw_params {
    double b1, b2, b3;
    double p;
    double sigma_time;   /* valid only when has_sigma_time != 0 */
    int has_sigma_time;
} gw_params;

GW_API gw_status gw_nondimensionalize(const gw_dimensional_params* d, gw_params* out);

/* ---- coupling topology ------------------------------------------------ */

typedef struct gw_topology gw_topology;

/* weights: row-major n x n, symmetric, nonnegative, zero diagonal */
GW_API gw_status gw_topology_from_weights(int n, const double* weights, gw_topology** out);
GW_API gw_status gw_topology_table1(gw_topology** out); /* built-in 9-node benchmark */
GW_API gw_status gw_topology_complete(int n, double weight, gw_topology** out);
GW_API gw_status gw_topology_ring(int n, double weight, gw_topology** out);
GW_API gw_status gw_topology_single(gw_topology** out); /* n = 1, uncoupled */
GW_API gw_status gw_topology_scaled(const gw_topology* t, double factor, gw_topology** out);
GW_API void gw_topology_free(gw_topology* t);

GW_API int gw_topology_size(const gw_topology* t);
GW_API int gw_topology_connected(const gw_topology* t);
/* out must hold n*n doubles */
GW_API gw_status gw_topology_weights(const gw_topology* t, double* out);
GW_API gw_status gw_topology_laplacian(const gw_topology* t, double* out);
GW_API gw_status gw_topology_algebraic_connectivity(const gw_topology* t, double* rho);

/* ---- closed-form analysis --------------------------------------------- */

typedef struct gw_analysis_report {
    double x0, x1_star, x2_star, equilibrium_residual;
    double sigma;
    double r;            /* oscillation index per the stated formula */
    double r_published;  /* replica of the published benchmark computation */
    double gamma;
    double rho;
    double sync_threshold;
    int oscillation_predicted; /* r > 1 */
    int sync_condition_met;    /* sufficient condition only */
    int sync_applicable;       /* 0 when the topology is disconnected */
    double w;
    double t_collective;
    double t_dimensional;      /* valid only when has_t_dimensional != 0 */
    int has_t_dimensional;
    double xi_star, eta_star;
    /* 1 = checks passed, 0 = violated, -1 = not applicable (r <= 1 or
       disconnected topology) */
    int marginal_stability;
} gw_analysis_report;

GW_API gw_status gw_analyze(const gw_params* g, const gw_topology* t, gw_analysis_report* out);
GW_API gw_status gw_oscillation_index(const gw_params* g, double* r);
GW_API gw_status gw_published_oscillation_index(const gw_params* g, double* r);
GW_API gw_status gw_predict_period(const gw_params* g, double* w, double* t_collective);
GW_API gw_status gw_gamma_max_slope(double p, double* gamma);

/* ---- simulation -------------------------------------------------------- */

typedef struct gw_sim_config {
    double dt;
    double t_end;
    double transient_fraction;
    uint64_t seed;
    double perturbation;
} gw_sim_config;

GW_API void gw_sim_config_default(gw_sim_config* cfg);

typedef struct gw_trajectory gw_trajectory;

/* Integrates from the seeded default initial state. Returns GW_ERR_DIVERGED
 * (with *out still set, truncated) if a non-finite state was reached. */
GW_API gw_status gw_simulate(const gw_params* g, const gw_topology* t,
                             const gw_sim_config* cfg, gw_trajectory** out);
/* init: 3n doubles, layout x1[0..n) x2[0..n) x3[0..n) */
GW_API gw_status gw_simulate_from(const gw_params* g, const gw_topology* t,
                                  const gw_sim_config* cfg, const double* init,
                                  gw_trajectory** out);
GW_API gw_status gw_default_initial_state(const gw_params* g, const gw_topology* t,
                                          const gw_sim_config* cfg, double* out);
GW_API void gw_trajectory_free(gw_trajectory* traj);

GW_API int gw_trajectory_size(const gw_trajectory* traj);       /* oscillator count */
GW_API size_t gw_trajectory_samples(const gw_trajectory* traj); /* sample count */
GW_API int gw_trajectory_diverged(const gw_trajectory* traj, double* t_diverged);
/* out must hold samples() doubles */
GW_API gw_status gw_trajectory_copy_times(const gw_trajectory* traj, double* out);
/* out must hold samples() * 3n doubles, sample-major */
GW_API gw_status gw_trajectory_copy_states(const gw_trajectory* traj, double* out);

/* ---- trajectory measurements ------------------------------------------ */

typedef struct gw_period_estimate {
    double period_mean;
    double period_std;
    int n_cycles;
} gw_period_estimate;

GW_API gw_status gw_estimate_period(const gw_trajectory* traj, const gw_sim_config* cfg,
                                    gw_period_estimate* out);
/* out must hold n doubles (per-oscillator mean periods) */
GW_API gw_status gw_estimate_period_per_oscillator(const gw_trajectory* traj,
                                                   const gw_sim_config* cfg, double* out);

typedef struct gw_sync_metric {
    double sync_error;
    double amplitude;
    int is_synchronized;
} gw_sync_metric;

GW_API gw_status gw_measure_sync(const gw_trajectory* traj, const gw_sim_config* cfg,
                                 gw_sync_metric* out);

/* *oscillatory is 1 for a sustained oscillation, 0 for quiescent decay */
GW_API gw_status gw_classify_oscillation(const gw_trajectory* traj, const gw_sim_config* cfg,
                                         const gw_params* g, int* oscillatory);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GOODWINNET_H */
