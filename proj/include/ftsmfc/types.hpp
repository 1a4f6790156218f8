#pragma once

#include <Eigen/Dense>

namespace ftsmfc {

// Outputs live in R^n, inputs in R^m with n <= m.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace ftsmfc
