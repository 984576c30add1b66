#include "ensemble/correlation_kernel.hpp"

#include <stdexcept>
#include <utility>

namespace spreadnet::ensemble {

CorrelationKernel::CorrelationKernel(DegreeDistribution base, double theta)
    : base_(std::move(base)), theta_(theta) {
  if (theta < 0.0 || theta >= 1.0)
    throw std::invalid_argument("CorrelationKernel: theta must lie in [0, 1)");
}

double CorrelationKernel::conditional(int k_to, int k_from) const {
  if (k_from < base_.min_degree() || k_from > base_.max_degree())
    throw std::out_of_range("conditional: source degree outside occupied range");
  const int idx_to = base_.index_of(k_to);
  if (idx_to < 0)
    return 0.0;
  double p = (1.0 - theta_) * base_.excess(k_to);
  if (k_to == k_from)
    p += theta_;
  return p;
}

double CorrelationKernel::annd(int k) const {
  if (k < base_.min_degree() || k > base_.max_degree())
    throw std::out_of_range("annd: degree outside occupied range");
  // sum_{k'} k' q(k') = <k^2>/<k>, so the theta-mix collapses to an affine
  // form in k.
  return (1.0 - theta_) * base_.heterogeneity() + theta_ * static_cast<double>(k);
}

double CorrelationKernel::annd_min() const { return annd(base_.min_degree()); }

double CorrelationKernel::annd_max() const { return annd(base_.max_degree()); }

double annd(const CorrelationKernel& kernel, int k) { return kernel.annd(k); }

}  // namespace spreadnet::ensemble
