#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>

namespace svkit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Ambient norm of the space. Euclidean is strictly convex; l1 and linf are
/// polyhedral, so metric projections onto convex sets may be set-valued under
/// them. That distinction drives all of the projection-face machinery.
enum class Norm { Euclidean, L1, Linf };

double norm_of(const Vec& v, Norm n);

/// Induced operator norm of a square matrix (largest singular value for the
/// Euclidean case, max column/row absolute sum for l1/linf).
double operator_norm(const Mat& M, Norm n);

std::string to_string(Norm n);
Norm norm_from_string(std::string_view s);

}  // namespace svkit
