// SPDX-License-Identifier: Apache-2.0
#include "fairscore/transport.hpp"

#include <cmath>
#include <utility>

namespace fairscore {

TransportMap fit_monotone_map(EmpiricalDistribution source,
                              EmpiricalDistribution target) {
  return TransportMap(std::move(source), std::move(target));
}

double apply_map(const TransportMap& map, double x) { return map.apply(x); }

AffineMap::AffineMap(Eigen::VectorXd mu0_in, Eigen::VectorXd mu1_in,
                     Eigen::MatrixXd linear_in)
    : mu0(std::move(mu0_in)),
      mu1(std::move(mu1_in)),
      linear(std::move(linear_in)) {
  if (mu0.size() != mu1.size() || linear.rows() != mu0.size() ||
      linear.cols() != mu0.size()) {
    throw DimError("affine map pieces have inconsistent dimensions");
  }
}

Eigen::VectorXd AffineMap::apply(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) {
    throw DimError("input dimension does not match the fitted map");
  }
  return mu1 + linear * (x - mu0);
}

double AffineMap::apply1d(double x) const {
  if (dim() != 1) {
    throw DimError("apply1d is defined for univariate maps only");
  }
  Eigen::VectorXd v(1);
  v << x;
  return apply(v)(0);
}

Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw MatrixError("matrix square root needs a square matrix");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw MatrixError("matrix square root needs a symmetric matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) {
    throw MatrixError("eigendecomposition failed");
  }
  Eigen::VectorXd lambda = es.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -1e-10 * scale) {
      throw MatrixError("matrix is not positive semi-definite");
    }
    lambda(i) = std::sqrt(std::max(lambda(i), 0.0));
  }
  Eigen::MatrixXd root = es.eigenvectors() * lambda.asDiagonal() *
                         es.eigenvectors().transpose();
  return ((root + root.transpose()) / 2.0).eval();
}

AffineMap fit_gaussian_map(const GaussianParams& g0, const GaussianParams& g1) {
  if (g0.dim() != g1.dim()) {
    throw DimError("Gaussian dimensions differ: " + std::to_string(g0.dim()) +
                   " vs " + std::to_string(g1.dim()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g0.covariance);
  if (es.info() != Eigen::Success) {
    throw MatrixError("eigendecomposition of source covariance failed");
  }
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double lo = lambda.minCoeff();
  const double hi = lambda.maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12) {
    throw SingularSourceError(
        "source covariance must be strictly positive-definite "
        "(condition number cap 1e12)");
  }
  const Eigen::MatrixXd root0 = es.eigenvectors() *
                                lambda.cwiseSqrt().asDiagonal() *
                                es.eigenvectors().transpose();
  const Eigen::MatrixXd inv_root0 =
      es.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().transpose();
  Eigen::MatrixXd inner = root0 * g1.covariance * root0;
  inner = ((inner + inner.transpose()) / 2.0).eval();
  Eigen::MatrixXd a = inv_root0 * matrix_sqrt(inner) * inv_root0;
  a = ((a + a.transpose()) / 2.0).eval();
  return AffineMap(g0.mean, g1.mean, std::move(a));
}

}  // namespace fairscore
