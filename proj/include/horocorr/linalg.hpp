#pragma once

#include <Eigen/Dense>
#include <vector>

namespace horocorr {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Eigenvalues of a small dense symmetric matrix, ascending. Closed form for
/// 2x2, cyclic Jacobi sweeps otherwise. Only the upper triangle is read.
std::vector<double> symmetric_eigenvalues(const Mat& m);

/// Eigenvalues of the pencil (b, a), i.e. of a^{-1} b with a symmetric
/// positive definite. Throws MathDomainError when a is not positive definite.
std::vector<double> generalized_symmetric_eigenvalues(const Mat& b, const Mat& a);

/// Largest |m_ij - m_ji|.
double asymmetry(const Mat& m);

}  // namespace horocorr
