#include "series/ksc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/rng.hpp"

namespace spreadnet::series {

namespace {

int default_shift(std::size_t len, int max_shift) {
  if (max_shift >= 0)
    return max_shift;
  return static_cast<int>(len / 4);
}

// y shifted by h with zero padding: y_(h)[i] = y[i-h].
double overlap_terms(const std::vector<double>& x, const std::vector<double>& y, int h,
                     double* y_norm2) {
  const int n = static_cast<int>(x.size());
  const int lo = std::max(0, h);
  const int hi = std::min(n, n + h);
  double dot = 0.0, ynorm = 0.0;
  for (int i = lo; i < hi; ++i) {
    const double yv = y[static_cast<std::size_t>(i - h)];
    dot += x[static_cast<std::size_t>(i)] * yv;
    ynorm += yv * yv;
  }
  *y_norm2 = ynorm;
  return dot;
}

std::vector<double> shifted(const std::vector<double>& y, int h) {
  const int n = static_cast<int>(y.size());
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const int j = i - h;
    if (j >= 0 && j < n)
      out[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(j)];
  }
  return out;
}

}  // namespace

Alignment ksc_distance(const std::vector<double>& x, const std::vector<double>& y, int max_shift) {
  if (x.size() != y.size())
    throw std::invalid_argument("ksc_distance: length mismatch");
  if (x.empty())
    throw std::invalid_argument("ksc_distance: empty series");
  double x_norm2 = 0.0;
  for (double v : x) x_norm2 += v * v;
  if (x_norm2 == 0.0)
    throw std::invalid_argument("ksc_distance: zero-norm reference series");

  const int h_max = default_shift(x.size(), max_shift);
  Alignment best;
  best.distance = std::numeric_limits<double>::infinity();
  for (int h = -h_max; h <= h_max; ++h) {
    double y_norm2 = 0.0;
    const double dot = overlap_terms(x, y, h, &y_norm2);
    double dist2, nu;
    if (y_norm2 == 0.0) {
      nu = 0.0;
      dist2 = 1.0;
    } else {
      nu = dot / y_norm2;
      dist2 = std::max(0.0, 1.0 - dot * dot / (y_norm2 * x_norm2));
    }
    const double d = std::sqrt(dist2);
    if (d < best.distance) {
      best.distance = d;
      best.nu = nu;
      best.shift = h;
    }
  }
  return best;
}

namespace {

struct Scratch {
  std::vector<std::vector<double>> normalized;  // unit-norm copies of inputs
};

std::vector<double> unit(const std::vector<double>& v) {
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  const double inv = 1.0 / std::sqrt(norm2);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * inv;
  return out;
}

// Spectral centroid of a member set: leading eigenvector of sum_i zhat zhat^T
// where zhat is the member aligned to the current centroid and normalized.
// Computed through the Gram matrix of the aligned members, which is the same
// eigenvector for a fraction of the cost when members are fewer than samples.
std::vector<double> spectral_centroid(const std::vector<const std::vector<double>*>& members,
                                      const std::vector<double>& current, int max_shift) {
  const std::size_t len = current.size();
  std::vector<std::vector<double>> aligned;
  aligned.reserve(members.size());
  for (const auto* m : members) {
    const Alignment a = ksc_distance(*m, current, max_shift);
    std::vector<double> z = shifted(*m, -a.shift);
    double norm2 = 0.0;
    for (double v : z) norm2 += v * v;
    if (norm2 <= 0.0)
      continue;  // support shifted entirely out of the window
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : z) v *= inv;
    aligned.push_back(std::move(z));
  }
  if (aligned.empty())
    return current;

  const int m = static_cast<int>(aligned.size());
  Eigen::MatrixXd gram(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < len; ++i) dot += aligned[static_cast<std::size_t>(a)][i] * aligned[static_cast<std::size_t>(b)][i];
      gram(a, b) = dot;
      gram(b, a) = dot;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd w = eig.eigenvectors().col(m - 1);  // largest eigenvalue

  std::vector<double> centroid(len, 0.0);
  for (int a = 0; a < m; ++a)
    for (std::size_t i = 0; i < len; ++i)
      centroid[i] += w(a) * aligned[static_cast<std::size_t>(a)][i];
  double norm2 = 0.0, total = 0.0;
  for (double v : centroid) {
    norm2 += v * v;
    total += v;
  }
  if (norm2 == 0.0)
    return current;
  double scale = 1.0 / std::sqrt(norm2);
  if (total < 0.0)
    scale = -scale;
  for (double& v : centroid) v *= scale;
  return centroid;
}

}  // namespace

ClusterModel ksc_cluster(const std::vector<std::vector<double>>& series, int k,
                         std::uint64_t seed, int max_iter, int max_shift) {
  const int n = static_cast<int>(series.size());
  if (k < 1 || k > n)
    throw std::invalid_argument("ksc_cluster: need 1 <= k <= number of series");
  const std::size_t len = series.front().size();
  for (const auto& s : series) {
    if (s.size() != len)
      throw std::invalid_argument("ksc_cluster: series lengths differ");
    double norm2 = 0.0;
    for (double v : s) norm2 += v * v;
    if (norm2 == 0.0)
      throw std::invalid_argument("ksc_cluster: zero series cannot be clustered");
  }

  Rng rng(seed);
  ClusterModel model;
  model.k = k;

  // Farthest-point initialization from a seeded random start.
  std::vector<int> chosen{static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)))};
  std::vector<double> closest(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  while (static_cast<int>(chosen.size()) < k) {
    const auto& last = series[static_cast<std::size_t>(chosen.back())];
    int far = -1;
    double far_d = -1.0;
    for (int i = 0; i < n; ++i) {
      const double d = ksc_distance(series[static_cast<std::size_t>(i)], last, max_shift).distance;
      closest[static_cast<std::size_t>(i)] = std::min(closest[static_cast<std::size_t>(i)], d);
      if (closest[static_cast<std::size_t>(i)] > far_d &&
          std::find(chosen.begin(), chosen.end(), i) == chosen.end()) {
        far_d = closest[static_cast<std::size_t>(i)];
        far = i;
      }
    }
    chosen.push_back(far >= 0 ? far : static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n))));
  }
  model.centroids.reserve(static_cast<std::size_t>(k));
  for (int c : chosen) model.centroids.push_back(unit(series[static_cast<std::size_t>(c)]));

  model.assignments.assign(static_cast<std::size_t>(n), -1);
  std::vector<double> dist_to_own(static_cast<std::size_t>(n), 0.0);

  for (int iter = 0; iter < max_iter; ++iter) {
    model.iterations = iter + 1;
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d =
            ksc_distance(series[static_cast<std::size_t>(i)], model.centroids[static_cast<std::size_t>(c)], max_shift)
                .distance;
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (model.assignments[static_cast<std::size_t>(i)] != best) {
        model.assignments[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
      dist_to_own[static_cast<std::size_t>(i)] = best_d;
    }

    // Reseed emptied clusters from the farthest series.
    for (int c = 0; c < k; ++c) {
      if (std::count(model.assignments.begin(), model.assignments.end(), c) > 0)
        continue;
      int far = 0;
      for (int i = 1; i < n; ++i)
        if (dist_to_own[static_cast<std::size_t>(i)] > dist_to_own[static_cast<std::size_t>(far)])
          far = i;
      model.centroids[static_cast<std::size_t>(c)] = unit(series[static_cast<std::size_t>(far)]);
      model.assignments[static_cast<std::size_t>(far)] = c;
      dist_to_own[static_cast<std::size_t>(far)] = 0.0;
      changed = true;
    }

    if (!changed && iter > 0)
      break;

    for (int c = 0; c < k; ++c) {
      std::vector<const std::vector<double>*> members;
      for (int i = 0; i < n; ++i)
        if (model.assignments[static_cast<std::size_t>(i)] == c)
          members.push_back(&series[static_cast<std::size_t>(i)]);
      if (!members.empty())
        model.centroids[static_cast<std::size_t>(c)] =
            spectral_centroid(members, model.centroids[static_cast<std::size_t>(c)], max_shift);
    }
  }

  // Final assignment pass so the invariant "each series sits with its nearest
  // centroid" holds for the returned model.
  model.within_cost.assign(static_cast<std::size_t>(k), 0.0);
  model.total_within_cost = 0.0;
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      const double d =
          ksc_distance(series[static_cast<std::size_t>(i)], model.centroids[static_cast<std::size_t>(c)], max_shift)
              .distance;
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    model.assignments[static_cast<std::size_t>(i)] = best;
    model.within_cost[static_cast<std::size_t>(best)] += best_d * best_d;
    model.total_within_cost += best_d * best_d;
  }
  return model;
}

double silhouette(const ClusterModel& model, const std::vector<std::vector<double>>& series,
                  int max_shift) {
  const int n = static_cast<int>(series.size());
  const int k = model.k;
  if (k < 2)
    throw std::invalid_argument("silhouette: needs k >= 2");

  std::vector<double> sym(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dij = ksc_distance(series[static_cast<std::size_t>(i)], series[static_cast<std::size_t>(j)], max_shift).distance;
      const double dji = ksc_distance(series[static_cast<std::size_t>(j)], series[static_cast<std::size_t>(i)], max_shift).distance;
      const double d = 0.5 * (dij + dji);
      sym[static_cast<std::size_t>(i) * n + j] = d;
      sym[static_cast<std::size_t>(j) * n + i] = d;
    }

  std::vector<int> cluster_size(static_cast<std::size_t>(k), 0);
  for (int a : model.assignments) ++cluster_size[static_cast<std::size_t>(a)];

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int own = model.assignments[static_cast<std::size_t>(i)];
    if (cluster_size[static_cast<std::size_t>(own)] <= 1)
      continue;  // singleton contributes 0
    std::vector<double> sum(static_cast<std::size_t>(k), 0.0);
    for (int j = 0; j < n; ++j)
      if (j != i)
        sum[static_cast<std::size_t>(model.assignments[static_cast<std::size_t>(j)])] +=
            sym[static_cast<std::size_t>(i) * n + j];
    const double a = sum[static_cast<std::size_t>(own)] /
                     static_cast<double>(cluster_size[static_cast<std::size_t>(own)] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      if (c == own || cluster_size[static_cast<std::size_t>(c)] == 0)
        continue;
      b = std::min(b, sum[static_cast<std::size_t>(c)] /
                          static_cast<double>(cluster_size[static_cast<std::size_t>(c)]));
    }
    if (!std::isfinite(b))
      continue;
    const double denom = std::max(a, b);
    total += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(n);
}

double hartigan_index(const std::vector<std::vector<double>>& series, int k, std::uint64_t seed,
                      int restarts, int max_shift) {
  const int n = static_cast<int>(series.size());
  if (k < 1 || k + 1 > n)
    throw std::invalid_argument("hartigan_index: need 1 <= k and k+1 <= number of series");
  auto best_cost = [&](int kk) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
      const auto model =
          ksc_cluster(series, kk, splitmix64(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(r + 1)),
                      100, max_shift);
      best = std::min(best, model.total_within_cost);
    }
    return best;
  };
  const double wk = best_cost(k);
  const double wk1 = best_cost(k + 1);
  if (wk1 == 0.0)
    return std::numeric_limits<double>::infinity();
  return (wk / wk1 - 1.0) * static_cast<double>(n - k - 1);
}

int select_cluster_count(const std::vector<std::vector<double>>& series, int k_max,
                         std::uint64_t seed, double threshold, int restarts, int max_shift) {
  for (int k = 1; k <= k_max; ++k) {
    if (hartigan_index(series, k, seed, restarts, max_shift) < threshold)
      return k;
  }
  return k_max;
}

}  // namespace spreadnet::series
