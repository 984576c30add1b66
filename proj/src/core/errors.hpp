#pragma once

#include <stdexcept>
#include <string>

namespace spreadnet {

// Numerical failure (non-convergence, step instability). Carries the last
// iterate so callers can report diagnostics instead of losing the run.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what, double last_estimate = 0.0)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const { return last_estimate_; }

 private:
  double last_estimate_;
};

}  // namespace spreadnet
