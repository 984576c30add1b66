#include "series/predict.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "series/ar.hpp"
#include "timevarying/timevarying.hpp"

namespace spreadnet::series {

PredictionReport predict_experiment(const TimeSeries& observed, double train_fraction,
                                    double time_scale, int restarts, std::uint64_t seed,
                                    int jobs) {
  const int n = static_cast<int>(observed.values.size());
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("predict_experiment: train_fraction must lie in (0, 1)");
  const int n_train = static_cast<int>(std::floor(train_fraction * n));
  const int horizon = n - n_train;
  if (n_train < 1 || horizon < 1)
    throw std::invalid_argument("predict_experiment: empty train or test window");

  PredictionReport report;
  report.train_length = n_train;
  report.horizon = horizon;

  const std::vector<double> head(observed.values.begin(), observed.values.begin() + n_train);
  const std::vector<double> tail(observed.values.begin() + n_train, observed.values.end());

  // Model arm: fit the six-parameter rate on the head and extrapolate it over
  // the full grid.
  try {
    fitlm::FitProblem problem;
    problem.observed.values = head;
    problem.observed.bin_hours = observed.bin_hours;
    problem.time_scale = time_scale;
    const double step = observed.bin_hours / time_scale;
    const double window = static_cast<double>(n_train) * step;
    double level = 0.0;
    for (double v : head) level += std::abs(v);
    level = std::max(level / static_cast<double>(n_train), 1e-3);
    problem.initial = timevarying::TimeVaryingParams(1.0, 1.0, 1.0, 1.5707963267948966,
                                                     std::max(window / 8.0, 1e-4), level);
    report.fit = fitlm::fit_theta(problem, restarts, seed, jobs);
    const auto curve = timevarying::activity_rate_curve(report.fit.theta, 0.5 * step, step, n);
    report.model.forecast.assign(curve.values.begin() + n_train, curve.values.end());
    report.model.relative_error = fitlm::relative_error(tail, report.model.forecast);
  } catch (const std::exception&) {
    report.model.failed = true;
  }

  auto ar_arm = [&](int order) {
    ArmResult arm;
    try {
      const ArFit fit = ar_fit(head, order);
      arm.forecast = ar_predict(fit.coefficients, head, horizon);
      arm.relative_error = fitlm::relative_error(tail, arm.forecast);
    } catch (const std::exception&) {
      arm.failed = true;
    }
    return arm;
  };
  report.ar6 = ar_arm(6);
  report.ar39 = ar_arm(39);
  return report;
}

}  // namespace spreadnet::series
