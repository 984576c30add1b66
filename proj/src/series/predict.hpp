#pragma once

#include <cstdint>

#include "fitlm/fit_theta.hpp"
#include "series/timeseries.hpp"

namespace spreadnet::series {

struct ArmResult {
  bool failed = false;
  double relative_error = 0.0;
  std::vector<double> forecast;
};

struct PredictionReport {
  ArmResult model;
  ArmResult ar6;
  ArmResult ar39;
  fitlm::FitResult fit;  // the time-varying fit behind the model arm
  int train_length = 0;
  int horizon = 0;
};

// Truncate-fit-predict: fit the six-parameter rate model on the leading
// fraction of the series and extrapolate it over the remainder; fit AR(6) and
// AR(39) on the same window and forecast; report the relative error of all
// three arms against the held-out tail. Arms whose fit cannot run are marked
// failed instead of aborting the experiment.
PredictionReport predict_experiment(const TimeSeries& observed, double train_fraction,
                                    double time_scale, int restarts, std::uint64_t seed,
                                    int jobs = 0);

}  // namespace spreadnet::series
