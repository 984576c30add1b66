#include "fitlm/levmar.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace spreadnet::fitlm {

namespace {

double squared_norm(const std::vector<double>& r) {
  double acc = 0.0;
  for (double v : r) acc += v * v;
  return acc;
}

bool all_finite(const std::vector<double>& r) {
  for (double v : r)
    if (!std::isfinite(v))
      return false;
  return true;
}

}  // namespace

LmResult lm_minimize(const ResidualFn& residual, std::vector<double> x0, int residual_count,
                     const LmOptions& opt) {
  const int m = static_cast<int>(x0.size());
  if (m < 1 || residual_count < 1)
    throw std::invalid_argument("lm_minimize: empty parameter or residual vector");

  std::vector<double> r(static_cast<std::size_t>(residual_count));
  if (!residual(x0, r) || !all_finite(r))
    throw std::invalid_argument("lm_minimize: residual not finite at x0");

  LmResult result;
  result.x = std::move(x0);
  result.cost = squared_norm(r);
  if (result.cost == 0.0) {
    result.converged = true;
    return result;
  }

  Eigen::MatrixXd jac(residual_count, m);
  Eigen::VectorXd rv(residual_count);
  std::vector<double> r_trial(r.size()), x_trial(result.x.size()), x_h(result.x.size());

  double mu = opt.mu0;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    result.iterations = iter + 1;

    for (int i = 0; i < residual_count; ++i) rv(i) = r[static_cast<std::size_t>(i)];
    // Forward-difference Jacobian, step 1e-6 * (1 + |x_j|).
    x_h = result.x;
    for (int j = 0; j < m; ++j) {
      const double h = opt.fd_step * (1.0 + std::abs(result.x[static_cast<std::size_t>(j)]));
      x_h[static_cast<std::size_t>(j)] = result.x[static_cast<std::size_t>(j)] + h;
      if (!residual(x_h, r_trial) || !all_finite(r_trial)) {
        x_h[static_cast<std::size_t>(j)] = result.x[static_cast<std::size_t>(j)] - h;
        if (!residual(x_h, r_trial) || !all_finite(r_trial))
          return result;  // cannot differentiate here; best effort
        for (int i = 0; i < residual_count; ++i)
          jac(i, j) = (r[static_cast<std::size_t>(i)] - r_trial[static_cast<std::size_t>(i)]) / h;
      } else {
        for (int i = 0; i < residual_count; ++i)
          jac(i, j) = (r_trial[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)]) / h;
      }
      x_h[static_cast<std::size_t>(j)] = result.x[static_cast<std::size_t>(j)];
    }

    const Eigen::VectorXd gradient = jac.transpose() * rv;
    if (gradient.norm() < opt.gradient_tol) {
      result.converged = true;
      return result;
    }
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    Eigen::VectorXd diag = normal.diagonal();
    for (int j = 0; j < m; ++j) diag(j) = std::max(diag(j), 1e-12);

    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal() += mu * diag;
      const Eigen::VectorXd delta = damped.ldlt().solve(-gradient);
      bool usable = delta.allFinite();
      if (usable) {
        for (int j = 0; j < m; ++j)
          x_trial[static_cast<std::size_t>(j)] = result.x[static_cast<std::size_t>(j)] + delta(j);
        usable = residual(x_trial, r_trial) && all_finite(r_trial);
      }
      const double trial_cost = usable ? squared_norm(r_trial) : std::numeric_limits<double>::infinity();
      if (usable && trial_cost < result.cost) {
        const double rel_drop = (result.cost - trial_cost) / result.cost;
        result.x = x_trial;
        result.cost = trial_cost;
        r = r_trial;
        mu = std::max(mu * 0.1, 1e-14);
        accepted = true;
        if (rel_drop < opt.rel_cost_tol) {
          result.converged = true;
          return result;
        }
      } else {
        mu *= 10.0;
        if (mu > opt.mu_max)
          return result;  // stuck at maximum damping
      }
    }
  }
  return result;
}

}  // namespace spreadnet::fitlm
