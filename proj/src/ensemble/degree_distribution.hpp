#pragma once

#include <limits>
#include <vector>

#include "core/rng.hpp"

namespace spreadnet::ensemble {

// Discrete degree law over its occupied degree set. Power-law construction
// normalizes the truncated law P(k) = k^-gamma / Z exactly over [m, k_cut];
// continuum closed forms are only asymptotic cross-checks and live in tests.
class DegreeDistribution {
 public:
  // P(k) proportional to k^-gamma on [min_degree, k_cut]. Requires gamma > 2
  // (finite mean in the untruncated limit), 1 <= min_degree <= k_cut.
  static DegreeDistribution power_law(double gamma, int min_degree, int k_cut);

  // All mass on a single degree class.
  static DegreeDistribution point_mass(int degree);

  // Explicit weights for degrees min_degree, min_degree+1, ...; zero-weight
  // classes are dropped, the rest is normalized.
  static DegreeDistribution from_weights(int min_degree, std::vector<double> weights);

  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t class_count() const { return degrees_.size(); }
  int min_degree() const { return degrees_.front(); }
  int max_degree() const { return degrees_.back(); }

  // Power-law exponent; NaN when the distribution was not built as one.
  double exponent() const { return gamma_; }

  double pmf(int k) const;
  double mean() const { return mean_; }
  double mean_square() const { return mean_square_; }
  double heterogeneity() const { return mean_square_ / mean_; }

  // Excess degree q(k) = k P(k) / <k>. Throws std::out_of_range outside
  // [min_degree, max_degree].
  double excess(int k) const;

  // Index into degrees()/weights(), or -1 when the class is unoccupied.
  int index_of(int k) const;

  int sample(Rng& rng) const;

 private:
  DegreeDistribution() = default;
  void finalize();

  std::vector<int> degrees_;
  std::vector<double> weights_;
  std::vector<double> cdf_;
  double gamma_ = std::numeric_limits<double>::quiet_NaN();
  double mean_ = 0.0;
  double mean_square_ = 0.0;
};

// Cutoff tied to a graph of n vertices: 3 * ceil(n^(1/(gamma-1))). Explicit
// overrides are always allowed where a cutoff is consumed.
int natural_cutoff(double gamma, long long n);

struct Moments {
  double mean_k;
  double mean_k2;
  double heterogeneity;
};

Moments moments(const DegreeDistribution& dist);

// Excess degree as a free operation (same contract as the member).
double excess_degree(const DegreeDistribution& dist, int k);

// <k>/<k^2> from the exact discrete moments.
double threshold_uncorrelated(const DegreeDistribution& dist);

// Continuum k_cut->infinity limit: (gamma-3)/(gamma-2) for gamma > 3, zero
// for 2 < gamma <= 3. Throws std::domain_error for gamma <= 2.
double threshold_uncorrelated_continuum(double gamma);

}  // namespace spreadnet::ensemble
