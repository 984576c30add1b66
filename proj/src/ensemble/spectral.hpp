#pragma once

#include <vector>

#include "core/errors.hpp"
#include "ensemble/correlation_kernel.hpp"

namespace spreadnet::ensemble {

// Dense connectivity matrix C_{kk'} = k P(k'|k) over the occupied degree set.
// Detailed balance makes D^{1/2} C D^{-1/2} symmetric for D = diag(P(k)), so
// the spectrum is real; the symmetrized form is what the eigenvalue routines
// operate on.
class ConnectivityMatrix {
 public:
  explicit ConnectivityMatrix(const CorrelationKernel& kernel);

  int side() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<double>& class_weights() const { return weights_; }
  double entry(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * degrees_.size() + col];
  }
  const std::vector<double>& dense() const { return entries_; }

 private:
  std::vector<int> degrees_;
  std::vector<double> weights_;  // P(k) per class, for symmetrization
  std::vector<double> entries_;  // row-major
};

struct PowerIterationOptions {
  double rel_tol = 1e-10;
  long long max_iterations = 2'000'000;
};

// Spectral radius Lambda_m by power iteration on the symmetrized matrix.
// Stops when the residual ||Sv - lambda v|| <= rel_tol * |lambda|, which for
// a symmetric matrix bounds the eigenvalue error directly. Throws
// numeric_error carrying the last iterate on non-convergence.
double largest_eigenvalue(const ConnectivityMatrix& c, const PowerIterationOptions& opt = {});

// Matrix-free variant exploiting the rank-one-plus-diagonal kernel structure;
// used for degree ranges where the dense matrix would be wasteful.
double largest_eigenvalue(const CorrelationKernel& kernel, const PowerIterationOptions& opt = {});

// rho_c = 1 / Lambda_m. Throws std::invalid_argument when Lambda_m <= 0.
double threshold_correlated(const ConnectivityMatrix& c, const PowerIterationOptions& opt = {});
double threshold_correlated(const CorrelationKernel& kernel, const PowerIterationOptions& opt = {});

// Jacobian of the linearized active-fraction dynamics,
// L_{kk'} = -beta delta_{kk'} + alpha lambda k P(k'|k).
class JacobianMatrix {
 public:
  JacobianMatrix(const CorrelationKernel& kernel, double alpha, double lambda, double beta);

  const CorrelationKernel& kernel() const { return kernel_; }
  double alpha() const { return alpha_; }
  double lambda() const { return lambda_; }
  double beta() const { return beta_; }
  double rho() const { return alpha_ * lambda_ / beta_; }

  int side() const;
  double entry(int row, int col) const;
  std::vector<double> dense() const;  // row-major

 private:
  CorrelationKernel kernel_;
  double alpha_, lambda_, beta_;
};

// Perron-Frobenius lower bound on lambda_m^2:
//   min_k beta^2 ((rho^2 annd_min - 2 rho) annd(k) + 1).
// Diagnostic only; valid as a bound whenever the inner expression is
// nonnegative.
double eigen_lower_bound(const JacobianMatrix& jac);

}  // namespace spreadnet::ensemble
