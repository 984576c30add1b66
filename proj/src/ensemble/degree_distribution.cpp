#include "ensemble/degree_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spreadnet::ensemble {

DegreeDistribution DegreeDistribution::power_law(double gamma, int min_degree, int k_cut) {
  if (!(gamma > 2.0))
    throw std::domain_error("power_law: gamma must exceed 2");
  if (min_degree < 1 || k_cut < min_degree)
    throw std::invalid_argument("power_law: need 1 <= min_degree <= k_cut");

  DegreeDistribution d;
  d.gamma_ = gamma;
  d.degrees_.reserve(static_cast<std::size_t>(k_cut - min_degree + 1));
  d.weights_.reserve(d.degrees_.capacity());
  for (int k = min_degree; k <= k_cut; ++k) {
    d.degrees_.push_back(k);
    d.weights_.push_back(std::pow(static_cast<double>(k), -gamma));
  }
  d.finalize();
  return d;
}

DegreeDistribution DegreeDistribution::point_mass(int degree) {
  if (degree < 1)
    throw std::invalid_argument("point_mass: degree must be positive");
  DegreeDistribution d;
  d.degrees_ = {degree};
  d.weights_ = {1.0};
  d.finalize();
  return d;
}

DegreeDistribution DegreeDistribution::from_weights(int min_degree, std::vector<double> weights) {
  if (min_degree < 1)
    throw std::invalid_argument("from_weights: min_degree must be positive");
  if (weights.empty())
    throw std::invalid_argument("from_weights: empty weight list");
  DegreeDistribution d;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const double w = weights[j];
    if (w < 0.0 || !std::isfinite(w))
      throw std::invalid_argument("from_weights: weights must be finite and nonnegative");
    if (w > 0.0) {
      d.degrees_.push_back(min_degree + static_cast<int>(j));
      d.weights_.push_back(w);
    }
  }
  if (d.degrees_.empty())
    throw std::invalid_argument("from_weights: all weights are zero");
  d.finalize();
  return d;
}

void DegreeDistribution::finalize() {
  double total = 0.0;
  for (double w : weights_) total += w;
  mean_ = 0.0;
  mean_square_ = 0.0;
  cdf_.resize(weights_.size());
  double running = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    weights_[j] /= total;
    const double k = static_cast<double>(degrees_[j]);
    mean_ += k * weights_[j];
    mean_square_ += k * k * weights_[j];
    running += weights_[j];
    cdf_[j] = running;
  }
  cdf_.back() = 1.0;
}

double DegreeDistribution::pmf(int k) const {
  const int idx = index_of(k);
  return idx < 0 ? 0.0 : weights_[static_cast<std::size_t>(idx)];
}

int DegreeDistribution::index_of(int k) const {
  const auto it = std::lower_bound(degrees_.begin(), degrees_.end(), k);
  if (it == degrees_.end() || *it != k)
    return -1;
  return static_cast<int>(it - degrees_.begin());
}

double DegreeDistribution::excess(int k) const {
  if (k < min_degree() || k > max_degree())
    throw std::out_of_range("excess: degree outside [min_degree, max_degree]");
  return static_cast<double>(k) * pmf(k) / mean_;
}

int DegreeDistribution::sample(Rng& rng) const {
  return degrees_[rng.sample_cdf(cdf_)];
}

int natural_cutoff(double gamma, long long n) {
  if (!(gamma > 2.0))
    throw std::domain_error("natural_cutoff: gamma must exceed 2");
  if (n < 1)
    throw std::invalid_argument("natural_cutoff: n must be positive");
  const double root = std::pow(static_cast<double>(n), 1.0 / (gamma - 1.0));
  return 3 * static_cast<int>(std::ceil(root));
}

Moments moments(const DegreeDistribution& dist) {
  return Moments{dist.mean(), dist.mean_square(), dist.heterogeneity()};
}

double excess_degree(const DegreeDistribution& dist, int k) { return dist.excess(k); }

double threshold_uncorrelated(const DegreeDistribution& dist) {
  return dist.mean() / dist.mean_square();
}

double threshold_uncorrelated_continuum(double gamma) {
  if (!(gamma > 2.0))
    throw std::domain_error("threshold_uncorrelated_continuum: gamma must exceed 2");
  if (gamma <= 3.0)
    return 0.0;
  return (gamma - 3.0) / (gamma - 2.0);
}

}  // namespace spreadnet::ensemble
