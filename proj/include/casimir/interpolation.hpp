#pragma once

#include <Eigen/Dense>

namespace casimir {

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Butland
/// slopes). Monotone data stay monotone between the knots.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(Eigen::ArrayXd x, Eigen::ArrayXd y);

  double operator()(double x) const;

  double x_front() const { return x_(0); }
  double x_back() const { return x_(x_.size() - 1); }
  Eigen::Index size() const { return x_.size(); }

 private:
  Eigen::ArrayXd x_;
  Eigen::ArrayXd y_;
  Eigen::ArrayXd slope_;
};

} // namespace casimir
