#include "ensemble/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace spreadnet::ensemble {

ConnectivityMatrix::ConnectivityMatrix(const CorrelationKernel& kernel)
    : degrees_(kernel.base().degrees()), weights_(kernel.base().weights()) {
  const std::size_t n = degrees_.size();
  const double theta = kernel.theta();
  const auto& dist = kernel.base();
  entries_.resize(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const double k = static_cast<double>(degrees_[r]);
    for (std::size_t c = 0; c < n; ++c) {
      double p = (1.0 - theta) * dist.excess(degrees_[c]);
      if (r == c)
        p += theta;
      entries_[r * n + c] = k * p;
    }
  }
}

namespace {

// Power iteration over a symmetric operator given as a matvec. The iterate is
// kept unit-norm; lambda is the Rayleigh quotient.
double symmetric_power_iteration(std::size_t n,
                                 const std::function<void(const std::vector<double>&, std::vector<double>&)>& matvec,
                                 const PowerIterationOptions& opt) {
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> w(n, 0.0);
  double lambda = 0.0;
  for (long long it = 0; it < opt.max_iterations; ++it) {
    matvec(v, w);
    lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) lambda += v[i] * w[i];
    double resid2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = w[i] - lambda * v[i];
      resid2 += r * r;
    }
    const double scale = std::max(std::abs(lambda), 1e-300);
    if (std::sqrt(resid2) <= opt.rel_tol * scale)
      return lambda;
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0)
      return 0.0;  // operator annihilated the iterate; spectrum is {0}
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  throw numeric_error("largest_eigenvalue: power iteration did not converge", lambda);
}

}  // namespace

double largest_eigenvalue(const ConnectivityMatrix& c, const PowerIterationOptions& opt) {
  const std::size_t n = static_cast<std::size_t>(c.side());
  // Symmetrize via the detailed-balance similarity S = D^{1/2} C D^{-1/2}.
  std::vector<double> s(n * n);
  const auto& w = c.class_weights();
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = std::sqrt(w[i]);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t col = 0; col < n; ++col)
      s[r * n + col] = sq[r] * c.entry(static_cast<int>(r), static_cast<int>(col)) / sq[col];
  auto matvec = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t r = 0; r < n; ++r) {
      double acc = 0.0;
      const double* row = s.data() + r * n;
      for (std::size_t col = 0; col < n; ++col) acc += row[col] * x[col];
      y[r] = acc;
    }
  };
  return symmetric_power_iteration(n, matvec, opt);
}

double largest_eigenvalue(const CorrelationKernel& kernel, const PowerIterationOptions& opt) {
  // S = D^{1/2} C D^{-1/2} with C = (1-theta) k q(k') + theta k delta. In the
  // symmetrized coordinates S x = (1-theta) u (u . x) / <k> + theta k x with
  // u_i = k_i sqrt(P(k_i)); one O(n) pass per application.
  const auto& dist = kernel.base();
  const auto& deg = dist.degrees();
  const auto& w = dist.weights();
  const std::size_t n = deg.size();
  const double theta = kernel.theta();
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i)
    u[i] = static_cast<double>(deg[i]) * std::sqrt(w[i]);
  const double inv_mean = 1.0 / dist.mean();
  auto matvec = [&](const std::vector<double>& x, std::vector<double>& y) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += u[i] * x[i];
    dot *= inv_mean * (1.0 - theta);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = dot * u[i] + theta * static_cast<double>(deg[i]) * x[i];
  };
  return symmetric_power_iteration(n, matvec, opt);
}

double threshold_correlated(const ConnectivityMatrix& c, const PowerIterationOptions& opt) {
  const double lambda_m = largest_eigenvalue(c, opt);
  if (lambda_m <= 0.0)
    throw std::invalid_argument("threshold_correlated: Lambda_m must be positive");
  return 1.0 / lambda_m;
}

double threshold_correlated(const CorrelationKernel& kernel, const PowerIterationOptions& opt) {
  const double lambda_m = largest_eigenvalue(kernel, opt);
  if (lambda_m <= 0.0)
    throw std::invalid_argument("threshold_correlated: Lambda_m must be positive");
  return 1.0 / lambda_m;
}

JacobianMatrix::JacobianMatrix(const CorrelationKernel& kernel, double alpha, double lambda,
                               double beta)
    : kernel_(kernel), alpha_(alpha), lambda_(lambda), beta_(beta) {
  if (alpha < 0.0 || alpha > 1.0 || lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("JacobianMatrix: alpha and lambda must lie in [0, 1]");
  if (beta <= 0.0 || beta > 1.0)
    throw std::invalid_argument("JacobianMatrix: beta must lie in (0, 1]");
}

int JacobianMatrix::side() const {
  return static_cast<int>(kernel_.base().class_count());
}

double JacobianMatrix::entry(int row, int col) const {
  const auto& deg = kernel_.base().degrees();
  const double k = static_cast<double>(deg[static_cast<std::size_t>(row)]);
  double v = alpha_ * lambda_ * k * kernel_.conditional(deg[static_cast<std::size_t>(col)], deg[static_cast<std::size_t>(row)]);
  if (row == col)
    v -= beta_;
  return v;
}

std::vector<double> JacobianMatrix::dense() const {
  const int n = side();
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      out[static_cast<std::size_t>(r) * n + c] = entry(r, c);
  return out;
}

double eigen_lower_bound(const JacobianMatrix& jac) {
  const auto& kernel = jac.kernel();
  const auto& deg = kernel.base().degrees();
  const double rho = jac.rho();
  const double beta2 = jac.beta() * jac.beta();
  const double annd_min = kernel.annd_min();
  double best = std::numeric_limits<double>::infinity();
  for (int k : deg) {
    const double v = beta2 * ((rho * rho * annd_min - 2.0 * rho) * kernel.annd(k) + 1.0);
    best = std::min(best, v);
  }
  return best;
}

}  // namespace spreadnet::ensemble
