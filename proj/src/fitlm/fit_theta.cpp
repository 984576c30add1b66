#include "fitlm/fit_theta.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "core/rng.hpp"

namespace spreadnet::fitlm {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// theta <-> unconstrained coordinates: log for the positive parameters,
// identity for z, free angle for vartheta.
std::vector<double> to_unconstrained(const timevarying::TimeVaryingParams& t) {
  return {std::log(t.p), std::log(t.eta), t.z, t.vartheta, std::log(t.c_p), std::log(t.c)};
}

timevarying::TimeVaryingParams from_unconstrained(const std::vector<double>& u) {
  return timevarying::TimeVaryingParams(std::exp(u[0]), std::exp(u[1]), u[2], u[3], std::exp(u[4]),
                                        std::exp(u[5]));
}

}  // namespace

double observation_time(const FitProblem& problem, int index) {
  const double step = problem.observed.bin_hours / problem.time_scale;
  return (static_cast<double>(index) + 0.5) * step;
}

std::vector<double> model_rate(const FitProblem& problem,
                               const timevarying::TimeVaryingParams& theta) {
  const int n = static_cast<int>(problem.observed.values.size());
  const double step = problem.observed.bin_hours / problem.time_scale;
  const auto curve = timevarying::activity_rate_curve(theta, 0.5 * step, step, n);
  return curve.values;
}

FitResult fit_theta(const FitProblem& problem, int restarts, std::uint64_t seed, int jobs) {
  const int n = static_cast<int>(problem.observed.values.size());
  if (n < 12)
    throw std::invalid_argument("fit_theta: need at least twice as many samples as parameters");
  if (!(problem.time_scale > 0.0))
    throw std::invalid_argument("fit_theta: time_scale must be positive");
  if (restarts < 1)
    throw std::invalid_argument("fit_theta: restarts must be positive");

  const auto& obs = problem.observed.values;
  double obs_extreme = 0.0;
  for (double v : obs) obs_extreme = std::max(obs_extreme, std::abs(v));

  const double step = problem.observed.bin_hours / problem.time_scale;
  auto residual = [&](const std::vector<double>& u, std::vector<double>& r) {
    for (double x : u)
      if (!std::isfinite(x))
        return false;
    // Keep exp() in a sane range; outside this box the model is meaningless
    // anyway and the step gets rejected.
    for (int j : {0, 1, 4, 5})
      if (u[static_cast<std::size_t>(j)] < -60.0 || u[static_cast<std::size_t>(j)] > 60.0)
        return false;
    const auto theta = from_unconstrained(u);
    const auto curve = timevarying::activity_rate_curve(theta, 0.5 * step, step, n);
    for (int i = 0; i < n; ++i) {
      const double v = curve.values[static_cast<std::size_t>(i)];
      if (!std::isfinite(v))
        return false;
      r[static_cast<std::size_t>(i)] = v - obs[static_cast<std::size_t>(i)];
    }
    return true;
  };

  struct Attempt {
    LmResult lm;
    bool valid = false;
  };
  std::vector<Attempt> attempts(static_cast<std::size_t>(restarts));

  auto run_one = [&](int r) {
    std::vector<double> u0;
    if (r == 0) {
      u0 = to_unconstrained(problem.initial);
    } else {
      Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(r));
      // Log-uniform boxes: p in [0.1, 5], eta in [0.01, 50], c_p in
      // [0.005, 0.5], c in [0.001, 10]; uniform z in [-3, 3], vartheta in
      // [0, 2 pi).
      u0 = {rng.uniform(std::log(0.1), std::log(5.0)),
            rng.uniform(std::log(0.01), std::log(50.0)),
            rng.uniform(-3.0, 3.0),
            rng.uniform(0.0, 2.0 * kPi),
            rng.uniform(std::log(0.005), std::log(0.5)),
            rng.uniform(std::log(0.001), std::log(10.0))};
    }
    std::vector<double> probe(static_cast<std::size_t>(n));
    if (!residual(u0, probe))
      return;  // unusable start
    attempts[static_cast<std::size_t>(r)].lm = lm_minimize(residual, u0, n);
    attempts[static_cast<std::size_t>(r)].valid = true;
  };

  if (jobs <= 0)
    jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, restarts));
  std::vector<std::future<void>> futures;
  const int chunk = (restarts + jobs - 1) / jobs;
  for (int j = 0; j < jobs; ++j) {
    const int begin = j * chunk;
    const int end = std::min(restarts, begin + chunk);
    if (begin >= end)
      break;
    futures.push_back(std::async(std::launch::async, [&, begin, end] {
      for (int r = begin; r < end; ++r) run_one(r);
    }));
  }
  for (auto& f : futures) f.get();

  int best = -1;
  for (int r = 0; r < restarts; ++r) {
    if (!attempts[static_cast<std::size_t>(r)].valid)
      continue;
    if (best < 0 || attempts[static_cast<std::size_t>(r)].lm.cost < attempts[static_cast<std::size_t>(best)].lm.cost)
      best = r;
  }
  if (best < 0)
    throw std::invalid_argument("fit_theta: no restart produced a finite residual");

  const LmResult& lm = attempts[static_cast<std::size_t>(best)].lm;
  FitResult out;
  out.theta = from_unconstrained(lm.x);
  out.cost = lm.cost;
  out.iterations = lm.iterations;
  out.converged = lm.converged;
  out.restarts_used = restarts;
  out.degenerate = (obs_extreme == 0.0) || (out.theta.c <= 1e-8);
  out.period_unidentifiable = out.theta.c_p > 0.5 * (static_cast<double>(n) * step);

  // Asymptotic standard errors from (J^T J)^-1 * cost / (N - 6), with the
  // Jacobian taken in the original parameter space at the optimum.
  const auto theta_opt = out.theta;
  std::array<double, 6> base{theta_opt.p, theta_opt.eta, theta_opt.z,
                             theta_opt.vartheta, theta_opt.c_p, theta_opt.c};
  const auto center = model_rate(problem, theta_opt);
  Eigen::MatrixXd jac(n, 6);
  bool jac_ok = true;
  for (int j = 0; j < 6 && jac_ok; ++j) {
    auto bumped = base;
    const double h = 1e-6 * (1.0 + std::abs(base[static_cast<std::size_t>(j)]));
    bumped[static_cast<std::size_t>(j)] += h;
    try {
      const timevarying::TimeVaryingParams tb(bumped[0], bumped[1], bumped[2], bumped[3],
                                              bumped[4], bumped[5]);
      const auto shifted = model_rate(problem, tb);
      for (int i = 0; i < n; ++i)
        jac(i, j) = (shifted[static_cast<std::size_t>(i)] - center[static_cast<std::size_t>(i)]) / h;
    } catch (const std::exception&) {
      jac_ok = false;
    }
  }
  if (jac_ok && n > 6) {
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::MatrixXd cov = normal.ldlt().solve(
        Eigen::MatrixXd::Identity(6, 6) * (out.cost / static_cast<double>(n - 6)));
    for (int j = 0; j < 6; ++j) {
      const double v = cov(j, j);
      out.stderr_[static_cast<std::size_t>(j)] = v > 0.0 ? std::sqrt(v) : std::numeric_limits<double>::quiet_NaN();
    }
  } else {
    out.stderr_.fill(std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

double relative_error(const std::vector<double>& observed, const std::vector<double>& predicted) {
  if (observed.size() != predicted.size())
    throw std::invalid_argument("relative_error: length mismatch");
  if (observed.empty())
    throw std::invalid_argument("relative_error: empty series");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - predicted[i];
    num += d * d;
    den += observed[i] * observed[i];
  }
  if (den == 0.0)
    throw std::invalid_argument("relative_error: observed series is all zero");
  return std::sqrt(num) / std::sqrt(den);
}

double relative_error(const series::TimeSeries& observed, const series::TimeSeries& predicted) {
  return relative_error(observed.values, predicted.values);
}

double theta_recovery_error(const timevarying::TimeVaryingParams& fitted,
                            const timevarying::TimeVaryingParams& truth) {
  double z = fitted.z;
  double phase = fitted.vartheta;
  if (truth.z != 0.0 && z != 0.0 && std::signbit(z) != std::signbit(truth.z)) {
    z = -z;
    phase = timevarying::wrap_angle(phase + kPi);
  }
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  double err = rel(fitted.p, truth.p);
  err = std::max(err, rel(fitted.eta, truth.eta));
  err = std::max(err, rel(z, truth.z));
  double dphi = std::abs(timevarying::wrap_angle(phase) - timevarying::wrap_angle(truth.vartheta));
  dphi = std::min(dphi, 2.0 * kPi - dphi);
  err = std::max(err, dphi / std::max(std::abs(truth.vartheta), 1e-300));
  err = std::max(err, rel(fitted.c_p, truth.c_p));
  err = std::max(err, rel(fitted.c, truth.c));
  return err;
}

}  // namespace spreadnet::fitlm
