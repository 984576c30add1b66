#include "spreadnet.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "ensemble/spectral.hpp"
#include "fitlm/fit_theta.hpp"
#include "graphgen/graph.hpp"
#include "meanfield/meanfield.hpp"
#include "montecarlo/montecarlo.hpp"
#include "series/ar.hpp"
#include "series/ksc.hpp"
#include "series/predict.hpp"
#include "timevarying/timevarying.hpp"

using namespace spreadnet;

struct sn_table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
};

struct sn_kernel {
  ensemble::CorrelationKernel kernel;
};

struct sn_graph {
  graphgen::Graph graph;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

// Maps core exceptions onto status codes; every entry point funnels through
// here so the C surface never leaks an exception.
template <typename Fn>
sn_status guarded(Fn&& fn) {
  try {
    fn();
    return SN_OK;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return SN_ERR_DOMAIN;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return SN_ERR_RANGE;
  } catch (const numeric_error& e) {
    set_error(e.what());
    return SN_ERR_NUMERIC;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SN_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return SN_ERR_NUMERIC;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SN_ERR_IO;  // remaining runtime errors come from file handling
  }
}

sn_status require(bool ok, const char* message) {
  if (ok)
    return SN_OK;
  set_error(message);
  return SN_ERR_ARGUMENT;
}

meanfield::ModelParams to_params(const sn_model_params& p) {
  return meanfield::ModelParams(p.alpha, p.lambda, p.beta);
}

timevarying::TimeVaryingParams to_theta(const sn_tv_params& t) {
  return timevarying::TimeVaryingParams(t.p, t.eta, t.z, t.vartheta, t.c_p, t.c);
}

sn_tv_params from_theta(const timevarying::TimeVaryingParams& t) {
  return sn_tv_params{t.p, t.eta, t.z, t.vartheta, t.c_p, t.c};
}

void fill_fit_report(const fitlm::FitResult& fit, sn_fit_report* out) {
  out->theta = from_theta(fit.theta);
  for (int j = 0; j < 6; ++j) out->stderr_[j] = fit.stderr_[static_cast<std::size_t>(j)];
  out->cost = fit.cost;
  out->iterations = fit.iterations;
  out->converged = fit.converged ? 1 : 0;
  out->degenerate = fit.degenerate ? 1 : 0;
  out->period_unidentifiable = fit.period_unidentifiable ? 1 : 0;
  out->restarts_used = fit.restarts_used;
}

std::vector<std::vector<double>> gather_series(const double* series, int count, int length) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)].assign(series + static_cast<std::size_t>(i) * length,
                                            series + static_cast<std::size_t>(i + 1) * length);
  return out;
}

}  // namespace

extern "C" {

const char* sn_version(void) { return "0.1.0"; }

const char* sn_last_error(void) { return g_last_error.c_str(); }

/* ---- tables ---- */

int sn_table_column_count(const sn_table* table) {
  return table ? static_cast<int>(table->names.size()) : 0;
}

long long sn_table_row_count(const sn_table* table) {
  if (!table || table->columns.empty())
    return 0;
  return static_cast<long long>(table->columns.front().size());
}

const char* sn_table_column_name(const sn_table* table, int column) {
  if (!table || column < 0 || column >= static_cast<int>(table->names.size()))
    return nullptr;
  return table->names[static_cast<std::size_t>(column)].c_str();
}

const double* sn_table_column(const sn_table* table, int column) {
  if (!table || column < 0 || column >= static_cast<int>(table->columns.size()))
    return nullptr;
  return table->columns[static_cast<std::size_t>(column)].data();
}

void sn_table_free(sn_table* table) { delete table; }

/* ---- kernels ---- */

sn_status sn_kernel_create_power_law(double gamma, int min_degree, int k_cut, double theta,
                                     sn_kernel** out) {
  if (sn_status s = require(out != nullptr, "null output"); s != SN_OK)
    return s;
  return guarded([&] {
    auto dist = ensemble::DegreeDistribution::power_law(gamma, min_degree, k_cut);
    *out = new sn_kernel{ensemble::CorrelationKernel(std::move(dist), theta)};
  });
}

sn_status sn_kernel_create_from_weights(int min_degree, const double* weights, int count,
                                        double theta, sn_kernel** out) {
  if (sn_status s = require(out && weights && count > 0, "null or empty weights"); s != SN_OK)
    return s;
  return guarded([&] {
    auto dist = ensemble::DegreeDistribution::from_weights(
        min_degree, std::vector<double>(weights, weights + count));
    *out = new sn_kernel{ensemble::CorrelationKernel(std::move(dist), theta)};
  });
}

void sn_kernel_free(sn_kernel* kernel) { delete kernel; }

sn_status sn_kernel_moments(const sn_kernel* kernel, double* mean_k, double* mean_k2,
                            double* heterogeneity) {
  if (sn_status s = require(kernel != nullptr, "null kernel"); s != SN_OK)
    return s;
  return guarded([&] {
    const auto m = ensemble::moments(kernel->kernel.base());
    if (mean_k)
      *mean_k = m.mean_k;
    if (mean_k2)
      *mean_k2 = m.mean_k2;
    if (heterogeneity)
      *heterogeneity = m.heterogeneity;
  });
}

sn_status sn_kernel_excess_degree(const sn_kernel* kernel, int k, double* out) {
  if (sn_status s = require(kernel && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] { *out = kernel->kernel.base().excess(k); });
}

sn_status sn_kernel_annd(const sn_kernel* kernel, int k, double* out) {
  if (sn_status s = require(kernel && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] { *out = kernel->kernel.annd(k); });
}

sn_status sn_kernel_threshold_uncorrelated(const sn_kernel* kernel, double* out) {
  if (sn_status s = require(kernel && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] { *out = ensemble::threshold_uncorrelated(kernel->kernel.base()); });
}

sn_status sn_kernel_largest_eigenvalue(const sn_kernel* kernel, double* out) {
  if (sn_status s = require(kernel && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] { *out = ensemble::largest_eigenvalue(kernel->kernel); });
}

sn_status sn_kernel_threshold_correlated(const sn_kernel* kernel, double* out) {
  if (sn_status s = require(kernel && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] { *out = ensemble::threshold_correlated(kernel->kernel); });
}

sn_status sn_kernel_eigen_lower_bound(const sn_kernel* kernel, double alpha, double lambda,
                                      double beta, double* out) {
  if (sn_status s = require(kernel && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] {
    const ensemble::JacobianMatrix jac(kernel->kernel, alpha, lambda, beta);
    *out = ensemble::eigen_lower_bound(jac);
  });
}

sn_status sn_kernel_degree_range(const sn_kernel* kernel, int* min_degree, int* max_degree) {
  if (sn_status s = require(kernel != nullptr, "null kernel"); s != SN_OK)
    return s;
  if (min_degree)
    *min_degree = kernel->kernel.base().min_degree();
  if (max_degree)
    *max_degree = kernel->kernel.base().max_degree();
  return SN_OK;
}

sn_status sn_kernel_sample_degrees(const sn_kernel* kernel, int count, uint64_t seed, int* out) {
  if (sn_status s = require(kernel && out && count > 0, "null or empty output"); s != SN_OK)
    return s;
  return guarded([&] {
    Rng rng(seed);
    for (int i = 0; i < count; ++i) out[i] = kernel->kernel.base().sample(rng);
  });
}

sn_status sn_natural_cutoff(double gamma, long long n, int* out) {
  if (sn_status s = require(out != nullptr, "null output"); s != SN_OK)
    return s;
  return guarded([&] { *out = ensemble::natural_cutoff(gamma, n); });
}

/* ---- graphs ---- */

sn_status sn_graph_generate_ba(int n, int m_edges, uint64_t seed, sn_graph** out) {
  if (sn_status s = require(out != nullptr, "null output"); s != SN_OK)
    return s;
  return guarded([&] { *out = new sn_graph{graphgen::generate_ba(n, m_edges, seed)}; });
}

sn_status sn_graph_configuration_model(const sn_kernel* kernel, int n, uint64_t seed,
                                       double* degree_gap_fraction, sn_graph** out) {
  if (sn_status s = require(kernel && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] {
    const auto degrees = graphgen::sample_powerlaw_sequence(kernel->kernel.base(), n, seed);
    long long stub_total = 0;
    for (int d : degrees) stub_total += d;
    auto result = graphgen::configuration_model(degrees, splitmix64(seed));
    if (degree_gap_fraction)
      *degree_gap_fraction = stub_total > 0 ? static_cast<double>(result.degree_l1_gap) /
                                                  static_cast<double>(stub_total)
                                            : 0.0;
    *out = new sn_graph{std::move(result.graph)};
  });
}

void sn_graph_free(sn_graph* graph) { delete graph; }

sn_status sn_graph_vertex_count(const sn_graph* graph, int* out) {
  if (sn_status s = require(graph && out, "null argument"); s != SN_OK)
    return s;
  *out = graph->graph.vertex_count();
  return SN_OK;
}

sn_status sn_graph_edge_count(const sn_graph* graph, long long* out) {
  if (sn_status s = require(graph && out, "null argument"); s != SN_OK)
    return s;
  *out = graph->graph.edge_count();
  return SN_OK;
}

sn_status sn_graph_write_edge_list(const sn_graph* graph, const char* path) {
  if (sn_status s = require(graph && path, "null argument"); s != SN_OK)
    return s;
  return guarded([&] { graphgen::write_edge_list(graph->graph, path); });
}

sn_status sn_graph_read_edge_list(const char* path, sn_graph** out) {
  if (sn_status s = require(path && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] { *out = new sn_graph{graphgen::read_edge_list(path)}; });
}

/* ---- mean-field ---- */

sn_status sn_meanfield_solve(const sn_kernel* kernel, sn_model_params params, double seed_mass,
                             int seed_degree, double dt, double tol, int sample_stride,
                             sn_solve_report* report, sn_table** trajectory) {
  if (sn_status s = require(kernel && report, "null argument"); s != SN_OK)
    return s;
  return guarded([&] {
    const auto& dist = kernel->kernel.base();
    meanfield::DegreeStateField init =
        seed_degree < 0 ? meanfield::proportional_seed(dist, seed_mass)
                        : meanfield::single_class_seed(dist, seed_degree, seed_mass);
    meanfield::SolveOptions opt;
    opt.dt = dt;
    opt.tol = tol;
    opt.sample_stride = trajectory ? (sample_stride > 0 ? sample_stride : 1) : 0;
    const auto rep = meanfield::solve_naive(kernel->kernel, to_params(params), std::move(init), opt);
    report->prevalence = rep.prevalence;
    report->iterations = rep.iterations;
    report->efficiency = rep.efficiency;
    report->seed_mass = rep.seed_mass;
    if (trajectory) {
      auto* t = new sn_table;
      t->names = {"t", "i", "a", "r", "q"};
      t->columns = {rep.trajectory.time, rep.trajectory.ignorant, rep.trajectory.active,
                    rep.trajectory.indifferent, rep.trajectory.quiet};
      *trajectory = t;
    }
  });
}

sn_status sn_meanfield_ensemble(const sn_kernel* kernel, sn_model_params params, double seed_mass,
                                int runs, uint64_t seed, int jobs, double dt, double tol,
                                double* prevalence_mean, double* prevalence_stderr,
                                double* efficiency_mean, double* efficiency_stderr) {
  if (sn_status s = require(kernel != nullptr, "null kernel"); s != SN_OK)
    return s;
  return guarded([&] {
    meanfield::SolveOptions opt;
    opt.dt = dt;
    opt.tol = tol;
    const auto summary =
        meanfield::ensemble_solve(kernel->kernel, to_params(params), seed_mass, runs, seed, opt, jobs);
    if (prevalence_mean)
      *prevalence_mean = summary.prevalence_mean;
    if (prevalence_stderr)
      *prevalence_stderr = summary.prevalence_stderr;
    if (efficiency_mean)
      *efficiency_mean = summary.efficiency_mean;
    if (efficiency_stderr)
      *efficiency_stderr = summary.efficiency_stderr;
  });
}

sn_status sn_predict_tau(sn_model_params params, double rho_c, double* tau) {
  if (sn_status s = require(tau != nullptr, "null output"); s != SN_OK)
    return s;
  return guarded([&] { *tau = meanfield::predict_tau(to_params(params), rho_c); });
}

/* ---- Monte Carlo ---- */

sn_status sn_mc_simulate(const sn_graph* graph, sn_model_params params, double dt, uint64_t seed,
                         int initial_active, sn_table** trace) {
  if (sn_status s = require(graph && trace, "null argument"); s != SN_OK)
    return s;
  return guarded([&] {
    const auto tr = montecarlo::simulate(graph->graph, to_params(params), dt, seed, initial_active);
    auto* t = new sn_table;
    t->names = {"t", "ignorant", "active", "indifferent", "quiet", "new_active"};
    const std::size_t steps = tr.steps();
    t->columns.assign(6, std::vector<double>(steps));
    for (std::size_t i = 0; i < steps; ++i) {
      t->columns[0][i] = static_cast<double>(i);
      t->columns[1][i] = static_cast<double>(tr.ignorant[i]);
      t->columns[2][i] = static_cast<double>(tr.active[i]);
      t->columns[3][i] = static_cast<double>(tr.indifferent[i]);
      t->columns[4][i] = static_cast<double>(tr.quiet[i]);
      t->columns[5][i] = static_cast<double>(tr.new_active[i]);
    }
    *trace = t;
  });
}

sn_status sn_mc_ensemble_prevalence(const sn_graph* graph, sn_model_params params, double dt,
                                    int runs, uint64_t seed, int jobs, double* mean,
                                    double* stderr_out) {
  if (sn_status s = require(graph != nullptr, "null graph"); s != SN_OK)
    return s;
  return guarded([&] {
    const auto res = montecarlo::ensemble_prevalence(graph->graph, to_params(params), dt, runs, seed, jobs);
    if (mean)
      *mean = res.mean;
    if (stderr_out)
      *stderr_out = res.stderr_of_mean;
  });
}

sn_status sn_smooth_gaussian(const double* values, int count, double sigma, double* out) {
  if (sn_status s = require(values && out && count > 0, "null or empty series"); s != SN_OK)
    return s;
  return guarded([&] {
    series::TimeSeries in;
    in.values.assign(values, values + count);
    const auto smoothed = montecarlo::gaussian_smooth(in, sigma);
    std::memcpy(out, smoothed.values.data(), sizeof(double) * static_cast<std::size_t>(count));
  });
}

/* ---- time-varying ---- */

sn_status sn_tv_rate_curve(sn_tv_params theta, double t0, double dt, int count, sn_table** out) {
  if (sn_status s = require(out != nullptr, "null output"); s != SN_OK)
    return s;
  return guarded([&] {
    const auto curve = timevarying::activity_rate_curve(to_theta(theta), t0, dt, count);
    auto* t = new sn_table;
    t->names = {"t", "rate", "cumulative"};
    t->columns = {curve.times, curve.values, curve.cumulative};
    *out = t;
  });
}

sn_status sn_tv_solve_extended(const sn_kernel* kernel, sn_tv_params theta, double seed_mass,
                               double dt, double t_end, sn_table** out) {
  if (sn_status s = require(kernel && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] {
    const auto traj =
        timevarying::solve_extended(kernel->kernel, to_theta(theta), seed_mass, dt, t_end);
    auto* t = new sn_table;
    t->names = {"t", "i", "a", "r", "dadt"};
    t->columns = {traj.time, traj.ignorant, traj.active, traj.indifferent, traj.dadt};
    *out = t;
  });
}

/* ---- fitting / series ---- */

sn_status sn_fit_theta(const double* observed, int count, double bin_hours, double time_scale,
                       const sn_tv_params* init, int restarts, uint64_t seed, int jobs,
                       sn_fit_report* out) {
  if (sn_status s = require(observed && out && count > 0, "null or empty series"); s != SN_OK)
    return s;
  return guarded([&] {
    fitlm::FitProblem problem;
    problem.observed.values.assign(observed, observed + count);
    problem.observed.bin_hours = bin_hours;
    problem.time_scale = time_scale;
    if (init)
      problem.initial = to_theta(*init);
    const auto fit = fitlm::fit_theta(problem, restarts, seed, jobs);
    fill_fit_report(fit, out);
  });
}

sn_status sn_relative_error(const double* observed, const double* predicted, int count,
                            double* out) {
  if (sn_status s = require(observed && predicted && out && count > 0, "null or empty series");
      s != SN_OK)
    return s;
  return guarded([&] {
    *out = fitlm::relative_error(std::vector<double>(observed, observed + count),
                                 std::vector<double>(predicted, predicted + count));
  });
}

sn_status sn_ksc_distance(const double* x, const double* y, int length, int max_shift,
                          double* distance, double* nu, int* shift) {
  if (sn_status s = require(x && y && length > 0, "null or empty series"); s != SN_OK)
    return s;
  return guarded([&] {
    const auto a = series::ksc_distance(std::vector<double>(x, x + length),
                                        std::vector<double>(y, y + length), max_shift);
    if (distance)
      *distance = a.distance;
    if (nu)
      *nu = a.nu;
    if (shift)
      *shift = a.shift;
  });
}

sn_status sn_ksc_cluster(const double* series_data, int count, int length, int k, uint64_t seed,
                         int max_iter, int* assignments, double* centroids, double* within_cost) {
  if (sn_status s = require(series_data && count > 0 && length > 0, "null or empty corpus");
      s != SN_OK)
    return s;
  return guarded([&] {
    const auto model = series::ksc_cluster(gather_series(series_data, count, length), k, seed,
                                           max_iter > 0 ? max_iter : 100);
    if (assignments)
      for (int i = 0; i < count; ++i) assignments[i] = model.assignments[static_cast<std::size_t>(i)];
    if (centroids)
      for (int c = 0; c < k; ++c)
        std::memcpy(centroids + static_cast<std::size_t>(c) * length,
                    model.centroids[static_cast<std::size_t>(c)].data(),
                    sizeof(double) * static_cast<std::size_t>(length));
    if (within_cost)
      *within_cost = model.total_within_cost;
  });
}

sn_status sn_silhouette(const double* series_data, int count, int length, int k, uint64_t seed,
                        double* out) {
  if (sn_status s = require(series_data && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] {
    const auto corpus = gather_series(series_data, count, length);
    const auto model = series::ksc_cluster(corpus, k, seed);
    *out = series::silhouette(model, corpus);
  });
}

sn_status sn_hartigan_index(const double* series_data, int count, int length, int k,
                            uint64_t seed, double* out) {
  if (sn_status s = require(series_data && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] {
    *out = series::hartigan_index(gather_series(series_data, count, length), k, seed);
  });
}

sn_status sn_select_cluster_count(const double* series_data, int count, int length, int k_max,
                                  uint64_t seed, double threshold, int* out) {
  if (sn_status s = require(series_data && out, "null argument"); s != SN_OK)
    return s;
  return guarded([&] {
    *out = series::select_cluster_count(gather_series(series_data, count, length), k_max, seed,
                                        threshold);
  });
}

sn_status sn_ar_fit(const double* values, int count, int order, double* coefficients,
                    int* degenerate) {
  if (sn_status s = require(values && coefficients && count > 0, "null or empty series");
      s != SN_OK)
    return s;
  return guarded([&] {
    const auto fit = series::ar_fit(std::vector<double>(values, values + count), order);
    std::memcpy(coefficients, fit.coefficients.data(), sizeof(double) * static_cast<std::size_t>(order));
    if (degenerate)
      *degenerate = fit.degenerate ? 1 : 0;
  });
}

sn_status sn_ar_predict(const double* coefficients, int order, const double* history, int count,
                        int horizon, double* out) {
  if (sn_status s = require(coefficients && history && out && count > 0, "null or empty input");
      s != SN_OK)
    return s;
  return guarded([&] {
    const auto forecast =
        series::ar_predict(std::vector<double>(coefficients, coefficients + order),
                           std::vector<double>(history, history + count), horizon);
    std::memcpy(out, forecast.data(), sizeof(double) * static_cast<std::size_t>(horizon));
  });
}

sn_status sn_predict_experiment(const double* values, int count, double bin_hours,
                                double train_fraction, double time_scale, int restarts,
                                uint64_t seed, int jobs, sn_predict_report* out) {
  if (sn_status s = require(values && out && count > 0, "null or empty series"); s != SN_OK)
    return s;
  return guarded([&] {
    series::TimeSeries obs;
    obs.values.assign(values, values + count);
    obs.bin_hours = bin_hours;
    const auto rep = series::predict_experiment(obs, train_fraction, time_scale, restarts, seed, jobs);
    out->model_error = rep.model.relative_error;
    out->ar6_error = rep.ar6.relative_error;
    out->ar39_error = rep.ar39.relative_error;
    out->model_failed = rep.model.failed ? 1 : 0;
    out->ar6_failed = rep.ar6.failed ? 1 : 0;
    out->ar39_failed = rep.ar39.failed ? 1 : 0;
    out->train_length = rep.train_length;
    out->horizon = rep.horizon;
    fill_fit_report(rep.fit, &out->fit);
  });
}

}  // extern "C"
