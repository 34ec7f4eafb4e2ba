#include "horocorr/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "horocorr/errors.hpp"

namespace horocorr {

namespace {

std::vector<double> eigen_2x2(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  return {mean - radius, mean + radius};
}

std::vector<double> jacobi(Mat m) {
  const Eigen::Index n = m.rows();
  m = 0.5 * (m + m.transpose()).eval();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (off <= 1e-300 || off <= 1e-30 * m.squaredNorm()) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double mkp = m(k, p);
          const double mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double mpk = m(p, k);
          const double mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
    }
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = m(i, i);
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionError("symmetric_eigenvalues: matrix not square");
  if (m.rows() == 1) return {m(0, 0)};
  if (m.rows() == 2) return eigen_2x2(m(0, 0), m(0, 1), m(1, 1));
  Mat upper = m.triangularView<Eigen::Upper>();
  Mat full = upper + upper.transpose();
  full.diagonal() = m.diagonal();
  return jacobi(full);
}

std::vector<double> generalized_symmetric_eigenvalues(const Mat& b, const Mat& a) {
  Eigen::LLT<Mat> llt(0.5 * (a + a.transpose()));
  if (llt.info() != Eigen::Success)
    throw MathDomainError("first fundamental form is not positive definite");
  const Mat lower = llt.matrixL();
  // L^{-1} B L^{-T}
  const Mat half = lower.triangularView<Eigen::Lower>().solve(0.5 * (b + b.transpose()));
  const Mat reduced =
      lower.triangularView<Eigen::Lower>().solve(half.transpose()).transpose();
  return symmetric_eigenvalues(0.5 * (reduced + reduced.transpose()));
}

double asymmetry(const Mat& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

}  // namespace horocorr
