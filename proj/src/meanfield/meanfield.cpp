#include "meanfield/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "core/rng.hpp"

namespace spreadnet::meanfield {

ModelParams::ModelParams(double a, double l, double b) : alpha(a), lambda(l), beta(b) {
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("ModelParams: alpha must lie in [0, 1]");
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("ModelParams: lambda must lie in [0, 1]");
  if (beta <= 0.0 || beta > 1.0)
    throw std::invalid_argument("ModelParams: beta must lie in (0, 1]");
}

DegreeStateField proportional_seed(const ensemble::DegreeDistribution& dist, double seed_mass) {
  if (seed_mass <= 0.0 || seed_mass > 1.0)
    throw std::invalid_argument("proportional_seed: seed mass must lie in (0, 1]");
  const std::size_t n = dist.class_count();
  DegreeStateField s;
  s.ignorant.assign(n, 1.0 - seed_mass);
  s.active.assign(n, seed_mass);
  s.indifferent.assign(n, 0.0);
  s.quiet.assign(n, 0.0);
  return s;
}

DegreeStateField single_class_seed(const ensemble::DegreeDistribution& dist, int degree,
                                   double seed_mass) {
  if (seed_mass <= 0.0 || seed_mass > 1.0)
    throw std::invalid_argument("single_class_seed: seed mass must lie in (0, 1]");
  const int idx = dist.index_of(degree);
  if (idx < 0)
    throw std::out_of_range("single_class_seed: degree class is unoccupied");
  const std::size_t n = dist.class_count();
  DegreeStateField s;
  s.ignorant.assign(n, 1.0);
  s.active.assign(n, 0.0);
  s.indifferent.assign(n, 0.0);
  s.quiet.assign(n, 0.0);
  const double a0 = std::min(1.0, seed_mass / dist.weights()[static_cast<std::size_t>(idx)]);
  s.active[static_cast<std::size_t>(idx)] = a0;
  s.ignorant[static_cast<std::size_t>(idx)] = 1.0 - a0;
  return s;
}

namespace {

SolveReport integrate(const ensemble::CorrelationKernel& kernel, const ModelParams& p,
                      DegreeStateField s, const SolveOptions& opt) {
  if (!(opt.dt > 0.0 && opt.dt <= 0.1))
    throw std::invalid_argument("solve: dt must lie in (0, 0.1]");
  if (!(opt.tol > 0.0))
    throw std::invalid_argument("solve: tol must be positive");
  const auto& dist = kernel.base();
  const std::size_t n = dist.class_count();
  if (s.ignorant.size() != n || s.active.size() != n || s.indifferent.size() != n ||
      s.quiet.size() != n)
    throw std::invalid_argument("solve: state field does not match the kernel's degree classes");

  const auto& weights = dist.weights();
  const auto& degrees = dist.degrees();
  const double theta = kernel.theta();
  const double dt = opt.dt;
  const double quiet_step = p.beta * dt;

  std::vector<double> excess(n);
  for (std::size_t j = 0; j < n; ++j)
    excess[j] = dist.excess(degrees[j]);

  SolveReport report;
  for (std::size_t j = 0; j < n; ++j)
    report.seed_mass += weights[j] * (s.active[j] + s.indifferent[j] + s.quiet[j]);

  auto sample = [&](long long step) {
    if (opt.sample_stride <= 0 || step % opt.sample_stride != 0)
      return;
    double ai = 0, aa = 0, ar = 0, aq = 0;
    for (std::size_t j = 0; j < n; ++j) {
      ai += weights[j] * s.ignorant[j];
      aa += weights[j] * s.active[j];
      ar += weights[j] * s.indifferent[j];
      aq += weights[j] * s.quiet[j];
    }
    report.trajectory.time.push_back(static_cast<double>(step) * dt);
    report.trajectory.ignorant.push_back(ai);
    report.trajectory.active.push_back(aa);
    report.trajectory.indifferent.push_back(ar);
    report.trajectory.quiet.push_back(aq);
  };

  long long step = 0;
  sample(0);
  while (step < opt.max_steps) {
    double edge_drive = 0.0;  // <<a>> = sum q(k) a_k
    double aggregate_active = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      edge_drive += excess[j] * s.active[j];
      aggregate_active += weights[j] * s.active[j];
    }
    if (aggregate_active < opt.tol)
      break;

    for (std::size_t j = 0; j < n; ++j) {
      const double psi = (1.0 - theta) * edge_drive + theta * s.active[j];
      const double k = static_cast<double>(degrees[j]);
      double flux;  // ignorant mass noticing during this step
      if (opt.scheme == Scheme::Probabilistic) {
        const double base = 1.0 - dt * p.lambda * psi;
        if (base < 0.0)
          throw numeric_error("solve: dt*lambda*psi exceeded 1; use a smaller dt",
                              static_cast<double>(step) * dt);
        flux = s.ignorant[j] * (1.0 - std::pow(base, k));
      } else {
        flux = p.lambda * k * s.ignorant[j] * psi * dt;
      }
      const double a_old = s.active[j];
      s.ignorant[j] -= flux;
      s.active[j] += p.alpha * flux - quiet_step * a_old;
      s.indifferent[j] += (1.0 - p.alpha) * flux;
      s.quiet[j] += quiet_step * a_old;

      if (opt.scheme == Scheme::Euler) {
        // Euler can leave the simplex when dt*lambda*k is too large.
        if (s.ignorant[j] < -1e-6 || s.active[j] < -1e-6 || s.ignorant[j] > 1.0 + 1e-6 ||
            s.active[j] > 1.0 + 1e-6)
          throw numeric_error("solve: Euler step left [0,1]; use a smaller dt",
                              static_cast<double>(step) * dt);
        s.ignorant[j] = std::clamp(s.ignorant[j], 0.0, 1.0);
        s.active[j] = std::clamp(s.active[j], 0.0, 1.0);
        s.indifferent[j] = std::clamp(s.indifferent[j], 0.0, 1.0);
        s.quiet[j] = std::clamp(s.quiet[j], 0.0, 1.0);
      }
    }
    ++step;
    sample(step);
  }

  if (step >= opt.max_steps)
    throw numeric_error("solve: max_steps reached before the active fraction vanished",
                        static_cast<double>(step) * dt);

  report.iterations = step;
  report.efficiency = step > 0 ? 1.0 / static_cast<double>(step) : 0.0;
  double prev = 0.0, act = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    prev += weights[j] * (s.indifferent[j] + s.quiet[j]);
    act += weights[j] * s.active[j];
  }
  report.prevalence = prev;
  report.final_active = act;
  return report;
}

}  // namespace

SolveReport solve_naive(const ensemble::CorrelationKernel& kernel, const ModelParams& params,
                        DegreeStateField init, const SolveOptions& opt) {
  return integrate(kernel, params, std::move(init), opt);
}

SolveReport solve_correlated(const ensemble::CorrelationKernel& kernel, const ModelParams& params,
                             DegreeStateField init, const SolveOptions& opt) {
  return integrate(kernel, params, std::move(init), opt);
}

double efficiency_from_iterations(const SolveReport& report) {
  if (report.iterations < 1)
    throw std::invalid_argument("efficiency_from_iterations: needs at least one iteration");
  return 1.0 / static_cast<double>(report.iterations);
}

double predict_tau(const ModelParams& params, double rho_c) {
  if (rho_c <= 0.0)
    throw std::invalid_argument("predict_tau: rho_c must be positive");
  const double rho = params.rho();
  if (rho <= rho_c)
    throw numeric_error("predict_tau: rho <= rho_c, no outbreak", rho);
  return (1.0 / params.beta) / (rho / rho_c - 1.0);
}

double predict_tau_sf(double gamma, const ModelParams& params) {
  if (!(gamma > 3.0))
    throw std::domain_error("predict_tau_sf: closed form requires gamma > 3");
  const double num = params.alpha * params.lambda * (gamma - 2.0) - params.beta * (gamma - 3.0);
  if (num <= 0.0)
    throw numeric_error("predict_tau_sf: rho <= rho_c, no outbreak", num);
  return (gamma - 3.0) / num;
}

ScalingPrediction predict_prevalence_scaling(double gamma, const std::vector<double>& rho_grid,
                                             double rho_c) {
  if (!(gamma > 2.0))
    throw std::domain_error("predict_prevalence_scaling: gamma must exceed 2");
  ScalingPrediction out;
  out.rho = rho_grid;
  out.predicted.reserve(rho_grid.size());
  if (gamma < 3.0) {
    out.regime = PrevalenceRegime::PowerOfRho;
    out.exponent = 1.0 / (3.0 - gamma);
    for (double r : rho_grid) out.predicted.push_back(std::pow(r, out.exponent));
  } else if (gamma == 3.0) {
    out.regime = PrevalenceRegime::ExponentialInverseRho;
    out.exponent = -1.0;
    for (double r : rho_grid) out.predicted.push_back(std::exp(-1.0 / r));
  } else if (gamma < 4.0) {
    out.regime = PrevalenceRegime::StretchedNearThreshold;
    out.exponent = 1.0 / (gamma - 3.0);
    for (double r : rho_grid)
      out.predicted.push_back(std::pow(std::max(0.0, 1.0 - rho_c / r), out.exponent));
  } else {
    out.regime = PrevalenceRegime::LinearNearThreshold;
    out.exponent = 1.0;
    for (double r : rho_grid) out.predicted.push_back(std::max(0.0, 1.0 - rho_c / r));
  }
  return out;
}

EnsembleSummary ensemble_solve(const ensemble::CorrelationKernel& kernel,
                               const ModelParams& params, double seed_mass, int runs,
                               std::uint64_t seed, const SolveOptions& opt, int jobs) {
  if (runs < 1)
    throw std::invalid_argument("ensemble_solve: runs must be positive");
  if (jobs <= 0)
    jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, runs));

  const auto& dist = kernel.base();
  std::vector<double> prevalence(static_cast<std::size_t>(runs));
  std::vector<double> efficiency(static_cast<std::size_t>(runs));
  std::vector<double> iterations(static_cast<std::size_t>(runs));
  std::vector<double> seed_masses(static_cast<std::size_t>(runs));

  auto worker = [&](int begin, int end) {
    for (int r = begin; r < end; ++r) {
      Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(r));
      const int degree = dist.sample(rng);
      auto init = single_class_seed(dist, degree, seed_mass);
      SolveOptions local = opt;
      local.sample_stride = 0;
      const SolveReport rep = integrate(kernel, params, std::move(init), local);
      prevalence[static_cast<std::size_t>(r)] = rep.prevalence;
      efficiency[static_cast<std::size_t>(r)] = rep.efficiency;
      iterations[static_cast<std::size_t>(r)] = static_cast<double>(rep.iterations);
      seed_masses[static_cast<std::size_t>(r)] = rep.seed_mass;
    }
  };

  std::vector<std::future<void>> futures;
  const int chunk = (runs + jobs - 1) / jobs;
  for (int j = 0; j < jobs; ++j) {
    const int begin = j * chunk;
    const int end = std::min(runs, begin + chunk);
    if (begin >= end)
      break;
    futures.push_back(std::async(std::launch::async, worker, begin, end));
  }
  for (auto& f : futures) f.get();

  auto mean_stderr = [](const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - m) * (x - m);
    const double se = xs.size() > 1
                          ? std::sqrt(var / (static_cast<double>(xs.size()) *
                                             (static_cast<double>(xs.size()) - 1.0)))
                          : 0.0;
    return std::pair<double, double>{m, se};
  };

  EnsembleSummary out;
  std::tie(out.prevalence_mean, out.prevalence_stderr) = mean_stderr(prevalence);
  std::tie(out.efficiency_mean, out.efficiency_stderr) = mean_stderr(efficiency);
  out.iterations_mean = mean_stderr(iterations).first;
  out.seed_mass_mean = mean_stderr(seed_masses).first;
  return out;
}

}  // namespace spreadnet::meanfield
