#pragma once

#include <vector>

namespace spreadnet::series {

// Uniformly sampled activity counts. bin_hours is the real-time width of one
// sample (thirty-minute bins by default).
struct TimeSeries {
  std::vector<double> values;
  double bin_hours = 0.5;
};

}  // namespace spreadnet::series
