#pragma once

#include <Eigen/Dense>

namespace cwig {

/// Natural cubic spline on an ascending node grid.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(Eigen::ArrayXd nodes, Eigen::ArrayXd values);

  double operator()(double x) const;
  bool empty() const { return x_.size() == 0; }
  const Eigen::ArrayXd& nodes() const { return x_; }
  const Eigen::ArrayXd& values() const { return y_; }

 private:
  Eigen::ArrayXd x_, y_, y2_;
};

}  // namespace cwig
