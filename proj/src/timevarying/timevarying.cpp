#include "timevarying/timevarying.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spreadnet::timevarying {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeight[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                 0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) acc += kGlWeight[i] * f(mid + half * kGlNode[i]);
  return acc * half;
}
}  // namespace

double wrap_angle(double x) {
  double w = std::fmod(x, kTwoPi);
  if (w < 0.0)
    w += kTwoPi;
  return w;
}

TimeVaryingParams::TimeVaryingParams(double p_, double eta_, double z_, double vartheta_,
                                     double c_p_, double c_)
    : p(p_), eta(eta_), z(z_), vartheta(wrap_angle(vartheta_)), c_p(c_p_), c(c_) {
  if (!(p > 0.0) || !(eta > 0.0))
    throw std::invalid_argument("TimeVaryingParams: Gamma shape and scale must be positive");
  if (!(c_p > 0.0))
    throw std::invalid_argument("TimeVaryingParams: period must be positive");
  if (!(c > 0.0))
    throw std::invalid_argument("TimeVaryingParams: amplitude must be positive");
}

double alpha_gamma(double t, double p, double eta) {
  if (!(p > 0.0) || !(eta > 0.0))
    throw std::invalid_argument("alpha_gamma: shape and scale must be positive");
  if (t <= 0.0)
    throw std::invalid_argument("alpha_gamma: t must be positive (grid starts at half a step)");
  return std::exp((p - 1.0) * std::log(t) - t / eta - p * std::log(eta) - std::lgamma(p));
}

double bessel_i0(double z) {
  const double x = std::abs(z);
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < 400; ++m) {
    term *= q / (static_cast<double>(m) * static_cast<double>(m));
    sum += term;
    if (term < 1e-15 * sum)
      break;
  }
  return sum;
}

double lambda_vonmises(double t, double z, double vartheta, double c_p) {
  if (!(c_p > 0.0))
    throw std::invalid_argument("lambda_vonmises: period must be positive");
  return std::exp(z * std::cos(kTwoPi * t / c_p - vartheta)) / (c_p * bessel_i0(z));
}

namespace {

// Integral of alpha(t) lambda(t) over [0, t0]. For p < 1 the integrand has an
// integrable t^(p-1) singularity: substitute t = t0 u^(1/p), which turns
// alpha(t) dt into (t0^p / (eta^p Gamma(p+1))) e^(-t(u)/eta) du with a smooth
// integrand. For p >= 1 the integrand is already bounded.
double head_integral(const TimeVaryingParams& th, double t0) {
  if (!(t0 > 0.0))
    return 0.0;
  if (th.p < 1.0) {
    const double scale =
        std::exp(th.p * std::log(t0) - th.p * std::log(th.eta) - std::lgamma(th.p + 1.0));
    auto f = [&](double u) {
      const double t = t0 * std::pow(u, 1.0 / th.p);
      return std::exp(-t / th.eta) * lambda_vonmises(t, th.z, th.vartheta, th.c_p);
    };
    double acc = 0.0;
    const int panels = 16;
    for (int j = 0; j < panels; ++j)
      acc += gauss_panel(f, static_cast<double>(j) / panels, static_cast<double>(j + 1) / panels);
    return scale * acc;
  }
  auto f = [&](double t) {
    return alpha_gamma(t, th.p, th.eta) * lambda_vonmises(t, th.z, th.vartheta, th.c_p);
  };
  double acc = 0.0;
  const int panels = 16;
  for (int j = 0; j < panels; ++j)
    acc += gauss_panel(f, t0 * j / panels, t0 * (j + 1) / panels);
  return acc;
}

}  // namespace

RateCurve activity_rate_curve(const TimeVaryingParams& theta, double t0, double dt, int count) {
  if (!(t0 > 0.0))
    throw std::invalid_argument("activity_rate_curve: grid must start after zero");
  if (!(dt > 0.0) || count < 1)
    throw std::invalid_argument("activity_rate_curve: need dt > 0 and count >= 1");

  RateCurve out;
  out.times.resize(static_cast<std::size_t>(count));
  out.values.resize(static_cast<std::size_t>(count));
  out.cumulative.resize(static_cast<std::size_t>(count));

  std::vector<double> product(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = t0 + dt * static_cast<double>(i);
    out.times[static_cast<std::size_t>(i)] = t;
    product[static_cast<std::size_t>(i)] =
        alpha_gamma(t, theta.p, theta.eta) * lambda_vonmises(t, theta.z, theta.vartheta, theta.c_p);
  }

  double running = head_integral(theta, t0);
  out.cumulative[0] = running;
  for (int i = 1; i < count; ++i) {
    running += 0.5 * dt * (product[static_cast<std::size_t>(i - 1)] + product[static_cast<std::size_t>(i)]);
    out.cumulative[static_cast<std::size_t>(i)] = running;
  }
  for (int i = 0; i < count; ++i)
    out.values[static_cast<std::size_t>(i)] =
        product[static_cast<std::size_t>(i)] * std::exp(out.cumulative[static_cast<std::size_t>(i)]) * theta.c;
  return out;
}

ExtendedTrajectory solve_extended(const ensemble::CorrelationKernel& kernel,
                                  const TimeVaryingParams& theta, double seed_mass, double dt,
                                  double t_end) {
  if (!(dt > 0.0) || !(t_end > dt))
    throw std::invalid_argument("solve_extended: need 0 < dt < t_end");
  if (seed_mass <= 0.0 || seed_mass > 1.0)
    throw std::invalid_argument("solve_extended: seed mass must lie in (0, 1]");

  const auto& dist = kernel.base();
  const auto& degrees = dist.degrees();
  const auto& weights = dist.weights();
  const std::size_t n = dist.class_count();
  const double mix = kernel.theta();

  std::vector<double> ig(n, 1.0 - seed_mass), ac(n, seed_mass), in(n, 0.0), excess(n);
  for (std::size_t j = 0; j < n; ++j) excess[j] = dist.excess(degrees[j]);

  ExtendedTrajectory traj;
  const long long steps = static_cast<long long>(std::ceil(t_end / dt));
  traj.time.reserve(static_cast<std::size_t>(steps));

  for (long long s = 0; s < steps; ++s) {
    const double t_mid = (static_cast<double>(s) + 0.5) * dt;
    const double a_t = alpha_gamma(t_mid, theta.p, theta.eta);
    const double l_t = lambda_vonmises(t_mid, theta.z, theta.vartheta, theta.c_p);

    double edge_drive = 0.0;
    for (std::size_t j = 0; j < n; ++j) edge_drive += excess[j] * ac[j];

    double rate = 0.0;  // aggregate da/dt at the midpoint
    for (std::size_t j = 0; j < n; ++j) {
      const double psi = (1.0 - mix) * edge_drive + mix * ac[j];
      const double k = static_cast<double>(degrees[j]);
      rate += weights[j] * a_t * l_t * k * ig[j] * psi;
      const double survive = std::exp(-l_t * k * psi * dt);
      const double flux = ig[j] * (1.0 - survive);
      ig[j] -= flux;
      ac[j] += a_t * flux;
      in[j] += (1.0 - a_t) * flux;
    }

    double gi = 0, ga = 0, gr = 0;
    for (std::size_t j = 0; j < n; ++j) {
      gi += weights[j] * ig[j];
      ga += weights[j] * ac[j];
      gr += weights[j] * in[j];
    }
    traj.time.push_back(static_cast<double>(s + 1) * dt);
    traj.ignorant.push_back(gi);
    traj.active.push_back(ga);
    traj.indifferent.push_back(gr);
    traj.dadt.push_back(rate);
  }
  return traj;
}

double integrate_product(const std::function<double(double)>& alpha_fn,
                         const std::function<double(double)>& lambda_fn, double t,
                         int uniform_panels) {
  if (!(t > 0.0))
    return 0.0;
  auto f = [&](double x) { return alpha_fn(x) * lambda_fn(x); };
  const double s0 = t / static_cast<double>(uniform_panels);
  double acc = 0.0;
  // [0, s0]: geometric grading toward zero covers integrable power
  // singularities; the innermost 2^-64 * s0 sliver is below any tolerance
  // used here.
  double hi = s0;
  for (int j = 0; j < 64; ++j) {
    const double lo = 0.5 * hi;
    acc += gauss_panel(f, lo, hi);
    hi = lo;
  }
  // [s0, t]: uniform panels.
  for (int j = 1; j < uniform_panels; ++j)
    acc += gauss_panel(f, s0 * static_cast<double>(j), s0 * static_cast<double>(j + 1));
  return acc;
}

namespace {

// Dense matrix exponential by scaling-and-squaring on the truncated series;
// sides here are <= 10.
std::vector<double> matrix_exp(const std::vector<double>& m, int n) {
  double norm = 0.0;
  for (int r = 0; r < n; ++r) {
    double row = 0.0;
    for (int c = 0; c < n; ++c) row += std::abs(m[static_cast<std::size_t>(r) * n + c]);
    norm = std::max(norm, row);
  }
  int s = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++s;
  }
  const double scale = std::pow(0.5, s);
  std::vector<double> a(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) a[i] = m[i] * scale;

  std::vector<double> result(m.size(), 0.0), term(m.size(), 0.0), tmp(m.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    result[static_cast<std::size_t>(i) * n + i] = 1.0;
    term[static_cast<std::size_t>(i) * n + i] = 1.0;
  }
  for (int k = 1; k <= 24; ++k) {
    // term = term * a / k
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j)
          acc += term[static_cast<std::size_t>(r) * n + j] * a[static_cast<std::size_t>(j) * n + c];
        tmp[static_cast<std::size_t>(r) * n + c] = acc / static_cast<double>(k);
      }
    term.swap(tmp);
    for (std::size_t i = 0; i < m.size(); ++i) result[i] += term[i];
  }
  for (int q = 0; q < s; ++q) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j)
          acc += result[static_cast<std::size_t>(r) * n + j] *
                 result[static_cast<std::size_t>(j) * n + c];
        tmp[static_cast<std::size_t>(r) * n + c] = acc;
      }
    result.swap(tmp);
  }
  return result;
}

}  // namespace

double matrix_exponential_check(const ensemble::CorrelationKernel& kernel,
                                const std::function<double(double)>& alpha_fn,
                                const std::function<double(double)>& lambda_fn,
                                const std::vector<double>& a0, double t) {
  const auto& dist = kernel.base();
  const int n = static_cast<int>(dist.class_count());
  if (n > 10)
    throw std::invalid_argument("matrix_exponential_check: kernel side must be <= 10");
  if (a0.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("matrix_exponential_check: a0 does not match the kernel side");
  if (t < 0.0)
    throw std::invalid_argument("matrix_exponential_check: t must be nonnegative");
  if (t == 0.0)
    return 0.0;

  const auto& degrees = dist.degrees();
  std::vector<double> cmat(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      cmat[static_cast<std::size_t>(r) * n + c] =
          static_cast<double>(degrees[static_cast<std::size_t>(r)]) *
          kernel.conditional(degrees[static_cast<std::size_t>(c)], degrees[static_cast<std::size_t>(r)]);

  // Route (i): a(t) = exp(Phi(t) C) a0.
  const double phi = integrate_product(alpha_fn, lambda_fn, t);
  std::vector<double> scaled(cmat.size());
  for (std::size_t i = 0; i < cmat.size(); ++i) scaled[i] = phi * cmat[i];
  const std::vector<double> e = matrix_exp(scaled, n);
  std::vector<double> route1(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < n; ++r) {
    double acc = 0.0;
    for (int c = 0; c < n; ++c) acc += e[static_cast<std::size_t>(r) * n + c] * a0[static_cast<std::size_t>(c)];
    route1[static_cast<std::size_t>(r)] = acc;
  }

  // Route (ii): RK4 on da/dt = alpha(t) lambda(t) C a from t_s where the
  // accumulated drive is negligible.
  double t_s = t;
  while (t_s > t * 1e-12 && integrate_product(alpha_fn, lambda_fn, t_s, 256) > 1e-10)
    t_s *= 0.5;
  std::vector<double> a = a0;
  const int steps = 200000;
  const double h = (t - t_s) / static_cast<double>(steps);
  std::vector<double> k1(static_cast<std::size_t>(n)), k2(k1), k3(k1), k4(k1), tmp(k1);
  auto rhs = [&](double time, const std::vector<double>& x, std::vector<double>& out) {
    const double g = alpha_fn(time) * lambda_fn(time);
    for (int r = 0; r < n; ++r) {
      double acc = 0.0;
      for (int c = 0; c < n; ++c)
        acc += cmat[static_cast<std::size_t>(r) * n + c] * x[static_cast<std::size_t>(c)];
      out[static_cast<std::size_t>(r)] = g * acc;
    }
  };
  double time = t_s;
  for (int s = 0; s < steps; ++s) {
    rhs(time, a, k1);
    for (int r = 0; r < n; ++r) tmp[static_cast<std::size_t>(r)] = a[static_cast<std::size_t>(r)] + 0.5 * h * k1[static_cast<std::size_t>(r)];
    rhs(time + 0.5 * h, tmp, k2);
    for (int r = 0; r < n; ++r) tmp[static_cast<std::size_t>(r)] = a[static_cast<std::size_t>(r)] + 0.5 * h * k2[static_cast<std::size_t>(r)];
    rhs(time + 0.5 * h, tmp, k3);
    for (int r = 0; r < n; ++r) tmp[static_cast<std::size_t>(r)] = a[static_cast<std::size_t>(r)] + h * k3[static_cast<std::size_t>(r)];
    rhs(time + h, tmp, k4);
    for (int r = 0; r < n; ++r)
      a[static_cast<std::size_t>(r)] +=
          h / 6.0 *
          (k1[static_cast<std::size_t>(r)] + 2.0 * k2[static_cast<std::size_t>(r)] +
           2.0 * k3[static_cast<std::size_t>(r)] + k4[static_cast<std::size_t>(r)]);
    time += h;
  }

  double resid = 0.0;
  for (int r = 0; r < n; ++r)
    resid = std::max(resid, std::abs(route1[static_cast<std::size_t>(r)] - a[static_cast<std::size_t>(r)]));
  return resid;
}

}  // namespace spreadnet::timevarying
