#pragma once

#include <cstdint>
#include <vector>

#include "core/errors.hpp"
#include "ensemble/correlation_kernel.hpp"

namespace spreadnet::meanfield {

struct ModelParams {
  double alpha;   // activation probability
  double lambda;  // contact probability
  double beta;    // quiescence probability

  ModelParams(double a, double l, double b);
  double rho() const { return alpha * lambda / beta; }
};

// Per-degree-class fractions aligned with the kernel's occupied degree list.
struct DegreeStateField {
  std::vector<double> ignorant, active, indifferent, quiet;
  double time = 0.0;
};

// One seed vertex out of n spread over degree classes in proportion to P(k):
// a_k(0) = seed_mass for every k, aggregate aware mass = seed_mass.
DegreeStateField proportional_seed(const ensemble::DegreeDistribution& dist, double seed_mass);

// One seed vertex of a specific degree class: a_k0(0) = seed_mass / P(k0),
// clamped to 1 when the class holds less than one vertex worth of mass.
DegreeStateField single_class_seed(const ensemble::DegreeDistribution& dist, int degree,
                                   double seed_mass);

struct Trajectory {
  std::vector<double> time, ignorant, active, indifferent, quiet;
};

enum class Scheme {
  // Discrete-time transition probabilities: ignorants survive a step with
  // (1 - dt*lambda*psi_k)^k. Unconditionally stable for dt*lambda <= 1 and
  // converges to the rate equations as dt -> 0.
  Probabilistic,
  // Literal forward Euler on the rate equations. First order as well but can
  // leave [0,1] when dt*lambda*k approaches 1; kept for cross-checks.
  Euler,
};

struct SolveOptions {
  double dt = 0.01;
  double tol = 1e-7;  // stop when aggregate active fraction drops below
  long long max_steps = 50'000'000;
  int sample_stride = 0;  // 0 = do not record a trajectory
  Scheme scheme = Scheme::Probabilistic;
};

struct SolveReport {
  double prevalence = 0.0;  // aggregate r + q at termination
  long long iterations = 0;
  double efficiency = 0.0;  // 1 / iterations
  double seed_mass = 0.0;   // aggregate aware mass at t = 0
  double final_active = 0.0;
  Trajectory trajectory;
};

// Integrates the four-state degree-class system for an arbitrary kernel
// (theta = 0 reproduces the uncorrelated equations exactly).
SolveReport solve_naive(const ensemble::CorrelationKernel& kernel, const ModelParams& params,
                        DegreeStateField init, const SolveOptions& opt = {});

// Theta-mix form with the split drive (1-theta) sum q(k') a_k' + theta a_k.
// Identical update rule; requires a ThetaMix-capable kernel and exists as the
// named counterpart of the correlated system.
SolveReport solve_correlated(const ensemble::CorrelationKernel& kernel, const ModelParams& params,
                             DegreeStateField init, const SolveOptions& opt = {});

double efficiency_from_iterations(const SolveReport& report);

// Growth time scale tau = (1/beta) / (rho/rho_c - 1); throws numeric_error
// when rho <= rho_c (no outbreak).
double predict_tau(const ModelParams& params, double rho_c);

// Equivalent closed form for scale-free exponents gamma > 3 (continuum
// threshold): tau = (gamma-3) / (alpha lambda (gamma-2) - beta (gamma-3)).
double predict_tau_sf(double gamma, const ModelParams& params);

enum class PrevalenceRegime {
  PowerOfRho,             // 2 < gamma < 3: P ~ rho^(1/(3-gamma))
  ExponentialInverseRho,  // gamma = 3: P ~ exp(-1/rho)
  StretchedNearThreshold, // 3 < gamma < 4: P ~ (1 - rho_c/rho)^(1/(gamma-3))
  LinearNearThreshold,    // gamma > 4: P ~ 1 - rho_c/rho
};

struct ScalingPrediction {
  PrevalenceRegime regime;
  double exponent;  // exponent attached to the regime's variable
  std::vector<double> rho;
  std::vector<double> predicted;  // proportional values, constants not fixed
};

// Predicted proportionality form of the prevalence for a scale-free exponent;
// used to check log-log slopes of solver output, never absolute values.
ScalingPrediction predict_prevalence_scaling(double gamma, const std::vector<double>& rho_grid,
                                             double rho_c = 0.0);

struct EnsembleSummary {
  double prevalence_mean = 0.0, prevalence_stderr = 0.0;
  double efficiency_mean = 0.0, efficiency_stderr = 0.0;
  double iterations_mean = 0.0;
  double seed_mass_mean = 0.0;
};

// Averages independent solves whose seed degree class is drawn from P(k),
// mirroring the random-equivalent-solution averaging of numerical sweeps.
// jobs = 0 uses the hardware concurrency.
EnsembleSummary ensemble_solve(const ensemble::CorrelationKernel& kernel,
                               const ModelParams& params, double seed_mass, int runs,
                               std::uint64_t seed, const SolveOptions& opt = {}, int jobs = 0);

}  // namespace spreadnet::meanfield
