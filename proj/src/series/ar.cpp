#include "series/ar.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace spreadnet::series {

ArFit ar_fit(const std::vector<double>& values, int order) {
  if (order < 1)
    throw std::invalid_argument("ar_fit: order must be positive");
  const int n = static_cast<int>(values.size());
  if (n <= 2 * order)
    throw std::invalid_argument("ar_fit: need more than 2*order samples");

  const int rows = n - order;
  Eigen::MatrixXd design(rows, order);
  Eigen::VectorXd target(rows);
  for (int t = order; t < n; ++t) {
    target(t - order) = values[static_cast<std::size_t>(t)];
    for (int j = 1; j <= order; ++j)
      design(t - order, j - 1) = values[static_cast<std::size_t>(t - j)];
  }

  ArFit fit;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  Eigen::VectorXd coeff;
  if (qr.rank() < order) {
    fit.degenerate = true;
    const Eigen::MatrixXd normal =
        design.transpose() * design + 1e-8 * Eigen::MatrixXd::Identity(order, order);
    coeff = normal.ldlt().solve(design.transpose() * target);
  } else {
    coeff = qr.solve(target);
  }
  fit.coefficients.assign(coeff.data(), coeff.data() + order);
  return fit;
}

std::vector<double> ar_predict(const std::vector<double>& coefficients,
                               const std::vector<double>& history, int horizon) {
  const int order = static_cast<int>(coefficients.size());
  if (static_cast<int>(history.size()) < order)
    throw std::invalid_argument("ar_predict: history shorter than the model order");
  if (horizon < 0)
    throw std::invalid_argument("ar_predict: negative horizon");

  std::vector<double> window(history.end() - order, history.end());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(horizon));
  for (int s = 0; s < horizon; ++s) {
    double next = 0.0;
    for (int j = 1; j <= order; ++j)
      next += coefficients[static_cast<std::size_t>(j - 1)] *
              window[window.size() - static_cast<std::size_t>(j)];
    out.push_back(next);
    window.erase(window.begin());
    window.push_back(next);
  }
  return out;
}

}  // namespace spreadnet::series
