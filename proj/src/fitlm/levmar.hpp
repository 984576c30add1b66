#pragma once

#include <functional>
#include <vector>

namespace spreadnet::fitlm {

// Residual evaluator: fills r (fixed length) for parameters x; returns false
// when the model cannot be evaluated there (treated as a rejected step).
using ResidualFn = std::function<bool(const std::vector<double>& x, std::vector<double>& r)>;

struct LmOptions {
  int max_iterations = 200;
  double rel_cost_tol = 1e-10;   // relative cost decrease below this => stop
  double gradient_tol = 1e-10;   // ||J^T r|| below this => stop
  double mu0 = 1e-3;             // initial damping
  double mu_max = 1e14;
  double fd_step = 1e-6;         // forward-difference step scale, h = fd*(1+|x|)
};

struct LmResult {
  std::vector<double> x;
  double cost = 0.0;  // residual sum of squares
  int iterations = 0;
  bool converged = false;
};

// Damped Gauss-Newton: solve (J^T J + mu diag(J^T J)) delta = -J^T r with mu
// scaled by 10 on reject and by 1/10 on accept. The Jacobian is built by
// forward differences. Accepted cost is nonincreasing by construction.
// Singular normal equations at maximum damping yield converged = false, never
// a throw.
LmResult lm_minimize(const ResidualFn& residual, std::vector<double> x0, int residual_count,
                     const LmOptions& opt = {});

}  // namespace spreadnet::fitlm
