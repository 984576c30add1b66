#pragma once

#include <functional>
#include <vector>

#include "ensemble/correlation_kernel.hpp"

namespace spreadnet::timevarying {

// The six-parameter vector of the time-varying model: Gamma popularity shape
// and scale, von Mises concentration and phase, activity period, amplitude
// constant. vartheta is wrapped into [0, 2*pi) on construction.
struct TimeVaryingParams {
  double p;         // Gamma shape, > 0
  double eta;       // Gamma scale, > 0
  double z;         // von Mises concentration, any sign
  double vartheta;  // phase in [0, 2*pi)
  double c_p;       // activity period, > 0 (model time units)
  double c;         // amplitude constant, > 0

  TimeVaryingParams(double p_, double eta_, double z_, double vartheta_, double c_p_, double c_);
};

double wrap_angle(double x);  // into [0, 2*pi)

// Gamma density t^(p-1) e^(-t/eta) / (eta^p Gamma(p)); integrates to one over
// (0, inf). Throws std::invalid_argument for nonpositive p or eta.
double alpha_gamma(double t, double p, double eta);

// Modified Bessel I_0 by its power series; |z| <= 20 with term tolerance
// 1e-15.
double bessel_i0(double z);

// Von Mises activity density transformed to period c_p:
// (1 / (c_p I_0(z))) exp(z cos(2 pi t / c_p - vartheta)). Negative z equals
// positive z with a phase shift of pi.
double lambda_vonmises(double t, double z, double vartheta, double c_p);

struct RateCurve {
  std::vector<double> times;
  std::vector<double> values;      // da/dt samples
  std::vector<double> cumulative;  // running integral of alpha*lambda
};

// Closed-form activity rate da/dt = alpha(t) lambda(t) exp(Int_0^t
// alpha lambda) * C on the uniform grid t0, t0+dt, ... The running integral is
// a cumulative trapezoid plus an exact-substitution quadrature for the [0, t0]
// head (the Gamma head carries mass t0^p which a bare trapezoid would drop).
RateCurve activity_rate_curve(const TimeVaryingParams& theta, double t0, double dt, int count);

struct ExtendedTrajectory {
  std::vector<double> time;        // step-end times
  std::vector<double> ignorant, active, indifferent;  // aggregates
  std::vector<double> dadt;        // instantaneous aggregate rate at mid-step
};

// Integrates the three-state system (no quiet state) with alpha(t), lambda(t)
// evaluated at step midpoints. The per-class ignorant update uses the exact
// exponential factor, so fractions stay in [0,1] for any lambda(t) magnitude.
ExtendedTrajectory solve_extended(const ensemble::CorrelationKernel& kernel,
                                  const TimeVaryingParams& theta, double seed_mass, double dt,
                                  double t_end);

// Consistency residual between two routes to a(t) for the linear system
// da/dt = alpha(t) lambda(t) C a:
//   (i) truncated series of exp(Phi(t) C) applied to a0, and
//   (ii) direct RK4 integration in t.
// Returns the sup-norm difference. Kernel side must be <= 10.
double matrix_exponential_check(const ensemble::CorrelationKernel& kernel,
                                const std::function<double(double)>& alpha_fn,
                                const std::function<double(double)>& lambda_fn,
                                const std::vector<double>& a0, double t);

// Integral of alpha_fn*lambda_fn over [0, t] on a mesh graded toward zero
// (handles integrable power singularities at the origin).
double integrate_product(const std::function<double(double)>& alpha_fn,
                         const std::function<double(double)>& lambda_fn, double t,
                         int uniform_panels = 4096);

}  // namespace spreadnet::timevarying
