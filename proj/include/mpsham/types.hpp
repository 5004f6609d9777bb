#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace mpsham {

using Index = Eigen::Index;
using Complex = std::complex<double>;

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Global defaults; see Subspace::rank_tol and IntersectOpts::angle_tol for
// how the two thresholds are applied (they are not interchangeable: rank
// tolerances compare singular values to zero, angle tolerances compare
// them to one).
inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kDefaultAngleTol = 1e-8;

}  // namespace mpsham
