#pragma once

#include <cstdint>
#include <vector>

#include "series/timeseries.hpp"

namespace spreadnet::series {

struct Alignment {
  double distance = 1.0;  // scale/shift-invariant distance in [0, 1]
  double nu = 0.0;        // optimal scaling of the shifted y
  int shift = 0;          // optimal shift of y (positive delays y)
};

// d(x, y) = min over integer shifts h in [-max_shift, max_shift] and scalings
// nu of ||x - nu y_(h)|| / ||x||, with zero-padded shifting and the closed
// form nu = <x, y_(h)> / ||y_(h)||^2. Throws std::invalid_argument on length
// mismatch or zero-norm x. max_shift < 0 selects the default length/4.
Alignment ksc_distance(const std::vector<double>& x, const std::vector<double>& y,
                       int max_shift = -1);

struct ClusterModel {
  int k = 0;
  std::vector<std::vector<double>> centroids;  // unit-normalized
  std::vector<int> assignments;                // per input series
  std::vector<double> within_cost;             // sum of d^2 per cluster
  double total_within_cost = 0.0;
  int iterations = 0;
};

// K-spectral-centroid clustering: alternate nearest-centroid assignment under
// ksc_distance and the spectral centroid update (leading eigenvector of the
// aligned members' scatter, sign fixed so the centroid sums nonnegative).
// Initial centroids come from a farthest-point traversal seeded by rng;
// emptied clusters are reseeded from the worst-fit series. The total cost is
// nonincreasing across iterations.
ClusterModel ksc_cluster(const std::vector<std::vector<double>>& series, int k,
                         std::uint64_t seed, int max_iter = 100, int max_shift = -1);

// Mean silhouette under the symmetrized distance (d(x,y)+d(y,x))/2; singleton
// clusters contribute zero, as do ties with a = b = 0. Requires k >= 2.
double silhouette(const ClusterModel& model, const std::vector<std::vector<double>>& series,
                  int max_shift = -1);

// H(k) = (W(k)/W(k+1) - 1) * (n - k - 1) with W taken as the best total
// within-cost over `restarts` seeded clusterings. Returns +inf when W(k+1)
// vanishes.
double hartigan_index(const std::vector<std::vector<double>>& series, int k, std::uint64_t seed,
                      int restarts = 8, int max_shift = -1);

// Smallest k in [1, k_max] with H(k) < threshold (the exported selection
// rule); returns k_max when none qualifies.
int select_cluster_count(const std::vector<std::vector<double>>& series, int k_max,
                         std::uint64_t seed, double threshold = 200.0, int restarts = 8,
                         int max_shift = -1);

}  // namespace spreadnet::series
