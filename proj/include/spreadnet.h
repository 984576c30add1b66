/* spreadnet — information-spreading models on heterogeneous networks.
 *
 * C interface to the spreadnet core: degree-class mean-field dynamics,
 * Monte Carlo simulation on explicit graphs, spectral thresholds, the
 * time-varying activity-rate model with Levenberg-Marquardt fitting,
 * K-spectral-centroid clustering and tendency prediction.
 *
 * Conventions:
 *   - Every function returns an sn_status code; results travel through out
 *     parameters. sn_last_error() describes the most recent failure on the
 *     calling thread.
 *   - Opaque handles are created by sn_*_create/generate functions and must
 *     be released with the matching sn_*_free.
 *   - Tabular results come back as an sn_table: named columns of doubles.
 */

#ifndef SPREADNET_H
#define SPREADNET_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SN_API __attribute__((visibility("default")))

typedef enum sn_status {
  SN_OK = 0,
  SN_ERR_ARGUMENT = 2,  /* invalid argument / configuration */
  SN_ERR_DOMAIN = 3,    /* parameter outside the model's domain */
  SN_ERR_RANGE = 4,     /* index or degree out of range */
  SN_ERR_NUMERIC = 5,   /* non-convergence or numerical failure */
  SN_ERR_IO = 6         /* file read/write failure */
} sn_status;

SN_API const char* sn_version(void);
SN_API const char* sn_last_error(void);

/* ------------------------------------------------------------------ */
/* Tables                                                              */

typedef struct sn_table sn_table;

SN_API int sn_table_column_count(const sn_table* table);
SN_API long long sn_table_row_count(const sn_table* table);
SN_API const char* sn_table_column_name(const sn_table* table, int column);
SN_API const double* sn_table_column(const sn_table* table, int column);
SN_API void sn_table_free(sn_table* table);

/* ------------------------------------------------------------------ */
/* Degree ensembles and correlation kernels                            */

typedef struct sn_kernel sn_kernel;

/* Truncated power law P(k) ~ k^-gamma on [min_degree, k_cut] mixed with the
 * assortative delta kernel: P(k'|k) = (1-theta) q(k') + theta delta_{kk'}.
 * Requires gamma > 2, 1 <= min_degree <= k_cut, theta in [0, 1). */
SN_API sn_status sn_kernel_create_power_law(double gamma, int min_degree, int k_cut, double theta,
                                            sn_kernel** out);

/* Explicit weights for degrees min_degree, min_degree+1, ... (zero entries
 * are dropped, the rest normalized). */
SN_API sn_status sn_kernel_create_from_weights(int min_degree, const double* weights, int count,
                                               double theta, sn_kernel** out);

SN_API void sn_kernel_free(sn_kernel* kernel);

SN_API sn_status sn_kernel_moments(const sn_kernel* kernel, double* mean_k, double* mean_k2,
                                   double* heterogeneity);
SN_API sn_status sn_kernel_excess_degree(const sn_kernel* kernel, int k, double* out);
SN_API sn_status sn_kernel_annd(const sn_kernel* kernel, int k, double* out);
SN_API sn_status sn_kernel_threshold_uncorrelated(const sn_kernel* kernel, double* out);
SN_API sn_status sn_kernel_largest_eigenvalue(const sn_kernel* kernel, double* out);
SN_API sn_status sn_kernel_threshold_correlated(const sn_kernel* kernel, double* out);
SN_API sn_status sn_kernel_eigen_lower_bound(const sn_kernel* kernel, double alpha, double lambda,
                                             double beta, double* out);
SN_API sn_status sn_kernel_degree_range(const sn_kernel* kernel, int* min_degree, int* max_degree);
SN_API sn_status sn_kernel_sample_degrees(const sn_kernel* kernel, int count, uint64_t seed,
                                          int* out);

/* 3 * ceil(n^(1/(gamma-1))): the default cutoff tied to an n-vertex graph. */
SN_API sn_status sn_natural_cutoff(double gamma, long long n, int* out);

/* ------------------------------------------------------------------ */
/* Graph generation                                                    */

typedef struct sn_graph sn_graph;

SN_API sn_status sn_graph_generate_ba(int n, int m_edges, uint64_t seed, sn_graph** out);

/* Configuration model on an i.i.d. degree sequence drawn from the kernel's
 * degree law; degree_gap_fraction (optional) receives the L1 distance between
 * target and realized degrees divided by the target stub count. */
SN_API sn_status sn_graph_configuration_model(const sn_kernel* kernel, int n, uint64_t seed,
                                              double* degree_gap_fraction, sn_graph** out);

SN_API void sn_graph_free(sn_graph* graph);
SN_API sn_status sn_graph_vertex_count(const sn_graph* graph, int* out);
SN_API sn_status sn_graph_edge_count(const sn_graph* graph, long long* out);
SN_API sn_status sn_graph_write_edge_list(const sn_graph* graph, const char* path);
SN_API sn_status sn_graph_read_edge_list(const char* path, sn_graph** out);

/* ------------------------------------------------------------------ */
/* Mean-field dynamics                                                 */

typedef struct sn_model_params {
  double alpha;  /* activation probability, [0, 1] */
  double lambda; /* contact probability, [0, 1] */
  double beta;   /* quiescence probability, (0, 1] */
} sn_model_params;

typedef struct sn_solve_report {
  double prevalence;   /* final aggregate r + q */
  long long iterations;
  double efficiency;   /* 1 / iterations */
  double seed_mass;    /* aggregate aware mass at t = 0 */
} sn_solve_report;

/* Integrates the degree-class system until the aggregate active fraction
 * falls below tol. seed_degree < 0 seeds proportionally across classes;
 * otherwise the given degree class carries the whole seed. When trajectory
 * is non-NULL it receives a table with columns t,i,a,r,q sampled every
 * sample_stride steps. */
SN_API sn_status sn_meanfield_solve(const sn_kernel* kernel, sn_model_params params,
                                    double seed_mass, int seed_degree, double dt, double tol,
                                    int sample_stride, sn_solve_report* report,
                                    sn_table** trajectory);

/* Averages solves whose seed degree class is drawn from P(k). */
SN_API sn_status sn_meanfield_ensemble(const sn_kernel* kernel, sn_model_params params,
                                       double seed_mass, int runs, uint64_t seed, int jobs,
                                       double dt, double tol, double* prevalence_mean,
                                       double* prevalence_stderr, double* efficiency_mean,
                                       double* efficiency_stderr);

/* tau = (1/beta) / (rho/rho_c - 1); SN_ERR_NUMERIC when rho <= rho_c. */
SN_API sn_status sn_predict_tau(sn_model_params params, double rho_c, double* tau);

/* ------------------------------------------------------------------ */
/* Monte Carlo                                                         */

/* Synchronous agent simulation; returns a table with columns
 * t,ignorant,active,indifferent,quiet,new_active. */
SN_API sn_status sn_mc_simulate(const sn_graph* graph, sn_model_params params, double dt,
                                uint64_t seed, int initial_active, sn_table** trace);

SN_API sn_status sn_mc_ensemble_prevalence(const sn_graph* graph, sn_model_params params,
                                           double dt, int runs, uint64_t seed, int jobs,
                                           double* mean, double* stderr_out);

/* Gaussian smoothing (kernel truncated at 4 sigma, reflective boundary);
 * out must hold count doubles. */
SN_API sn_status sn_smooth_gaussian(const double* values, int count, double sigma, double* out);

/* ------------------------------------------------------------------ */
/* Time-varying model                                                  */

typedef struct sn_tv_params {
  double p;        /* Gamma shape, > 0 */
  double eta;      /* Gamma scale, > 0 */
  double z;        /* von Mises concentration */
  double vartheta; /* phase, wrapped into [0, 2 pi) */
  double c_p;      /* activity period, > 0 */
  double c;        /* amplitude, > 0 */
} sn_tv_params;

/* Closed-form activity rate on the uniform grid t0, t0+dt, ...; returns a
 * table with columns t,rate,cumulative. */
SN_API sn_status sn_tv_rate_curve(sn_tv_params theta, double t0, double dt, int count,
                                  sn_table** out);

/* Three-state extended solve; returns a table with columns t,i,a,r,dadt. */
SN_API sn_status sn_tv_solve_extended(const sn_kernel* kernel, sn_tv_params theta,
                                      double seed_mass, double dt, double t_end, sn_table** out);

/* ------------------------------------------------------------------ */
/* Fitting and series analysis                                         */

typedef struct sn_fit_report {
  sn_tv_params theta;
  double stderr_[6]; /* asymptotic standard errors, theta field order */
  double cost;       /* residual sum of squares */
  int iterations;
  int converged;
  int degenerate;
  int period_unidentifiable;
  int restarts_used;
} sn_fit_report;

/* Least squares of the rate model against an observed series. bin_hours is
 * the real-time bin width, time_scale the real-hours-per-model-time ratio.
 * init may be NULL to use a neutral default start. */
SN_API sn_status sn_fit_theta(const double* observed, int count, double bin_hours,
                              double time_scale, const sn_tv_params* init, int restarts,
                              uint64_t seed, int jobs, sn_fit_report* out);

SN_API sn_status sn_relative_error(const double* observed, const double* predicted, int count,
                                   double* out);

/* Scale/shift-invariant distance; also reports the minimizing scale and
 * shift. max_shift < 0 selects the default length/4. */
SN_API sn_status sn_ksc_distance(const double* x, const double* y, int length, int max_shift,
                                 double* distance, double* nu, int* shift);

/* K-spectral-centroid clustering of `count` series of `length` samples
 * (row-major). assignments needs count ints, centroids k*length doubles,
 * within_cost one double; any output may be NULL. */
SN_API sn_status sn_ksc_cluster(const double* series, int count, int length, int k, uint64_t seed,
                                int max_iter, int* assignments, double* centroids,
                                double* within_cost);

SN_API sn_status sn_silhouette(const double* series, int count, int length, int k, uint64_t seed,
                               double* out);

SN_API sn_status sn_hartigan_index(const double* series, int count, int length, int k,
                                   uint64_t seed, double* out);

/* Smallest k with Hartigan index below the threshold (the selection rule). */
SN_API sn_status sn_select_cluster_count(const double* series, int count, int length, int k_max,
                                         uint64_t seed, double threshold, int* out);

SN_API sn_status sn_ar_fit(const double* values, int count, int order, double* coefficients,
                           int* degenerate);

SN_API sn_status sn_ar_predict(const double* coefficients, int order, const double* history,
                               int count, int horizon, double* out);

typedef struct sn_predict_report {
  double model_error;
  double ar6_error;
  double ar39_error;
  int model_failed;
  int ar6_failed;
  int ar39_failed;
  int train_length;
  int horizon;
  sn_fit_report fit;
} sn_predict_report;

/* Truncate-fit-predict comparison of the rate model against AR baselines. */
SN_API sn_status sn_predict_experiment(const double* values, int count, double bin_hours,
                                       double train_fraction, double time_scale, int restarts,
                                       uint64_t seed, int jobs, sn_predict_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPREADNET_H */
