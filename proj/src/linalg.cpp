// linalg.cpp - Eigen-backed double-precision services.
#include "tbgeo/linalg.hpp"

#include <Eigen/Dense>

namespace tbgeo {

static Eigen::MatrixXd to_eigen(const SquareMat<double>& m) {
  const int n = m.dim();
  Eigen::MatrixXd e(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = m(i, j);
  return e;
}

double condition_estimate(const SquareMat<double>& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

bool is_positive_definite(const SquareMat<double>& m) {
  Eigen::MatrixXd e = to_eigen(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (e + e.transpose()));
  if (es.info() != Eigen::Success) return false;
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  return lo > 1e-14 * std::max(1.0, hi);
}

std::vector<double> lstsq_min_norm(int rows, int cols, const std::vector<double>& a,
                                   const std::vector<double>& b) {
  if (a.size() != static_cast<std::size_t>(rows) * cols || b.size() != static_cast<std::size_t>(rows))
    throw DimensionMismatchError("least-squares operands have inconsistent sizes");
  Eigen::MatrixXd A(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) A(r, c) = a[static_cast<std::size_t>(r) * cols + c];
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), rows);
  // BDCSVD's solve is the minimum-norm solution when A is rank deficient,
  // which weak-symmetry systems routinely are (gauge freedom in the alphas).
  Eigen::VectorXd u = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  return std::vector<double>(u.data(), u.data() + u.size());
}

}  // namespace tbgeo
