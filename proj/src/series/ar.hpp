#pragma once

#include <vector>

namespace spreadnet::series {

struct ArFit {
  std::vector<double> coefficients;  // lag 1 first
  bool degenerate = false;           // rank-deficient design, ridge applied
};

// Ordinary least squares on the lagged design matrix, no intercept. A
// rank-deficient design falls back to a ridge (1e-8) solve and sets the
// degeneracy flag. Requires length > 2 * order.
ArFit ar_fit(const std::vector<double>& values, int order);

// Iterative multi-step forecast feeding predictions back as inputs; returns
// `horizon` values. history must hold at least `order` samples.
std::vector<double> ar_predict(const std::vector<double>& coefficients,
                               const std::vector<double>& history, int horizon);

}  // namespace spreadnet::series
