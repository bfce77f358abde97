// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "fairscore/divergence.hpp"
#include "fairscore/empirical.hpp"
#include "fairscore/errors.hpp"

namespace fairscore {

// The monotone rearrangement pushing one empirical distribution onto
// another: x maps to quantile(target, cdf(source, x)). On R this is the
// optimal transport map for every convex cost, so fitting it is just
// storing the two distributions.
//
// Outside the source range the map clamps: below the source minimum the
// cdf is 0 and the target minimum comes back, above the maximum the
// target maximum. Fair scores stay inside the observed target range.
class TransportMap {
 public:
  TransportMap(EmpiricalDistribution source, EmpiricalDistribution target)
      : source_(std::move(source)), target_(std::move(target)) {}

  double apply(double x) const { return target_.quantile(source_.cdf(x)); }

  const EmpiricalDistribution& source() const noexcept { return source_; }
  const EmpiricalDistribution& target() const noexcept { return target_; }

 private:
  EmpiricalDistribution source_;
  EmpiricalDistribution target_;
};

TransportMap fit_monotone_map(EmpiricalDistribution source,
                              EmpiricalDistribution target);

double apply_map(const TransportMap& map, double x);

// Affine push-forward x |-> mu1 + A (x - mu0) between Gaussians. A is
// symmetric positive-definite and satisfies A Sigma0 A = Sigma1.
struct AffineMap {
  AffineMap(Eigen::VectorXd mu0, Eigen::VectorXd mu1, Eigen::MatrixXd linear);

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  // Univariate convenience; throws DimError unless d = 1.
  double apply1d(double x) const;

  Eigen::Index dim() const noexcept { return mu0.size(); }

  Eigen::VectorXd mu0;
  Eigen::VectorXd mu1;
  Eigen::MatrixXd linear;
};

// Optimal Gaussian transport map from g0 to g1:
//   A = Sigma0^{-1/2} (Sigma0^{1/2} Sigma1 Sigma0^{1/2})^{1/2} Sigma0^{-1/2}
// Sigma0 must be strictly positive-definite with condition number below
// 1e12; anything flatter throws SingularSourceError rather than falling
// back to a pseudo-inverse.
AffineMap fit_gaussian_map(const GaussianParams& g0, const GaussianParams& g1);

// Principal square root of a symmetric positive semi-definite matrix via
// eigendecomposition. Eigenvalues in [-1e-10, 0) are treated as rounded
// zeros; anything lower throws MatrixError, as does an asymmetric input.
Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& m);

}  // namespace fairscore
