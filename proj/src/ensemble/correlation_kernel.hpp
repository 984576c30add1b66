#pragma once

#include "ensemble/degree_distribution.hpp"

namespace spreadnet::ensemble {

enum class KernelKind { Uncorrelated, ThetaMix };

// Degree-degree correlation law P(k'|k) = (1-theta) q(k') + theta delta_{kk'}
// over the base distribution's occupied degrees. theta = 0 is the
// uncorrelated kernel q(k'); theta in [0, 1) tunes assortativity. Rows sum to
// one and the detailed balance k P(k'|k) P(k) = k' P(k|k') P(k') holds by
// construction.
class CorrelationKernel {
 public:
  explicit CorrelationKernel(DegreeDistribution base, double theta = 0.0);

  KernelKind kind() const {
    return theta_ == 0.0 ? KernelKind::Uncorrelated : KernelKind::ThetaMix;
  }
  double theta() const { return theta_; }
  const DegreeDistribution& base() const { return base_; }

  // P(k_to | k_from); zero for unoccupied k_to, throws std::out_of_range for
  // k_from outside the occupied range.
  double conditional(int k_to, int k_from) const;

  // Average nearest-neighbors degree sum_{k'} k' P(k'|k); constant in k for
  // the uncorrelated kernel.
  double annd(int k) const;
  double annd_min() const;
  double annd_max() const;

 private:
  DegreeDistribution base_;
  double theta_;
};

double annd(const CorrelationKernel& kernel, int k);

}  // namespace spreadnet::ensemble
