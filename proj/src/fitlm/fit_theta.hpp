#pragma once

#include <array>
#include <cstdint>

#include "fitlm/levmar.hpp"
#include "series/timeseries.hpp"
#include "timevarying/timevarying.hpp"

namespace spreadnet::fitlm {

struct FitProblem {
  series::TimeSeries observed;
  // Real-hours per model-time unit; one observation bin of bin_hours maps to
  // bin_hours / time_scale model time. Fixed, never fitted.
  double time_scale = 500.0;
  timevarying::TimeVaryingParams initial{1.0, 1.0, 0.0, 0.0, 0.1, 1.0};
};

struct FitResult {
  timevarying::TimeVaryingParams theta{1.0, 1.0, 0.0, 0.0, 0.1, 1.0};
  std::array<double, 6> stderr_{};  // asymptotic standard errors, theta order
  double cost = 0.0;                // residual sum of squares
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;           // null signal / amplitude at the boundary
  bool period_unidentifiable = false;  // fitted period spans > half the window
  int restarts_used = 0;
};

// Model time of observation bin i (bin midpoint).
double observation_time(const FitProblem& problem, int index);

// Model rate sampled at the observation times of the problem.
std::vector<double> model_rate(const FitProblem& problem,
                               const timevarying::TimeVaryingParams& theta);

// Least squares of the closed-form activity rate against the observed series.
// Optimization runs in transformed space (log for p, eta, c_p, c; identity
// for z; free angle for vartheta, wrapped on output); multi-start around the
// documented log-uniform boxes with the problem's initial guess as restart 0.
// Restarts run concurrently; the best (cost, restart index) wins, so results
// do not depend on scheduling. jobs = 0 uses hardware concurrency.
FitResult fit_theta(const FitProblem& problem, int restarts, std::uint64_t seed, int jobs = 0);

// sqrt(sum (s - s~)^2) / sqrt(sum s^2). Throws std::invalid_argument on
// length mismatch or an all-zero observed series.
double relative_error(const series::TimeSeries& observed, const series::TimeSeries& predicted);
double relative_error(const std::vector<double>& observed, const std::vector<double>& predicted);

// Worst relative component error between a fitted vector and the truth, after
// resolving the (z, vartheta) -> (-z, vartheta + pi) mirror symmetry and
// comparing phases circularly. Used by recovery checks.
double theta_recovery_error(const timevarying::TimeVaryingParams& fitted,
                            const timevarying::TimeVaryingParams& truth);

}  // namespace spreadnet::fitlm
