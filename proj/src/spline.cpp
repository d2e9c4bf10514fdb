#include "cwig/spline.hpp"

#include <stdexcept>

namespace cwig {

CubicSpline::CubicSpline(Eigen::ArrayXd nodes, Eigen::ArrayXd values)
    : x_(std::move(nodes)), y_(std::move(values)) {
  const Eigen::Index n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("CubicSpline: bad node set");
  y2_ = Eigen::ArrayXd::Zero(n);
  if (n == 2) return;
  // natural spline: tridiagonal Thomas pass for the second derivatives
  Eigen::ArrayXd u = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
    double p = sig * y2_[i - 1] + 2.0;
    y2_[i] = (sig - 1.0) / p;
    double d = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) -
               (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
    u[i] = (6.0 * d / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
  }
  y2_[n - 1] = 0.0;
  for (Eigen::Index i = n - 2; i >= 0; --i) y2_[i] = y2_[i] * y2_[i + 1] + u[i];
}

double CubicSpline::operator()(double x) const {
  const Eigen::Index n = x_.size();
  if (n == 0) throw std::logic_error("CubicSpline: empty");
  if (x <= x_[0]) x = x_[0];
  if (x >= x_[n - 1]) x = x_[n - 1];
  // binary search for the bracketing interval
  Eigen::Index lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    Eigen::Index mid = (lo + hi) / 2;
    (x_[mid] > x ? hi : lo) = mid;
  }
  double h = x_[hi] - x_[lo];
  double a = (x_[hi] - x) / h, b = (x - x_[lo]) / h;
  return a * y_[lo] + b * y_[hi] +
         ((a * a * a - a) * y2_[lo] + (b * b * b - b) * y2_[hi]) * h * h / 6.0;
}

}  // namespace cwig
