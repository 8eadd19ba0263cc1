#pragma once

#include <Eigen/Dense>

namespace hoeffding {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Relative rank / residual tolerance used throughout unless overridden.
inline constexpr double kDefaultTol = 1e-10;

// Positive-definiteness threshold on the smallest eigenvalue of the
// Feshchenko matrix.
inline constexpr double kDefaultEpsPd = 1e-10;

}  // namespace hoeffding
