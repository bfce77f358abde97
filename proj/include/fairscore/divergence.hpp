// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "fairscore/empirical.hpp"
#include "fairscore/errors.hpp"

namespace fairscore {

// A discrete distribution over B bins with strictly increasing edges.
// Masses are non-negative and sum to 1 (within 1e-12).
struct BinnedDistribution {
  BinnedDistribution(std::vector<double> edges, std::vector<double> masses);

  std::vector<double> edges;   // B+1 values
  std::vector<double> masses;  // B values

  std::size_t bins() const noexcept { return masses.size(); }
};

// B equal-width bins spanning [lo, hi].
std::vector<double> uniform_edges(std::size_t bins, double lo, double hi);

// Histogram of the sample on the given edges. The first bin is closed on
// the left, every other bin is (edge_b, edge_{b+1}]. A sample outside the
// edge range throws BinRangeError.
BinnedDistribution bin_scores(const EmpiricalDistribution& dist,
                              std::vector<double> edges);

// Total variation distance. Symmetric form (1/2)*sum |p_i - q_i|; the
// one-sided variant sum_i max(p_i - q_i, 0) drops the symmetry to tell a
// favored group from a disfavored one.
double total_variation(const BinnedDistribution& p,
                       const BinnedDistribution& q, bool one_sided = false);

// Kullback-Leibler divergence KL(p||q) in nats, with 0*ln 0 := 0.
// With smoothing disabled, a bin where q is 0 but p is not throws
// SupportError (the divergence is infinite). With smoothing enabled, an
// additive 1e-9 mass per bin (then renormalized) keeps it finite.
double kl_divergence(const BinnedDistribution& p, const BinnedDistribution& q,
                     bool smooth = false);

// Jensen-Shannon divergence in nats: (KL(p||m) + KL(q||m))/2 against the
// mixture m = (p+q)/2. Symmetric, finite, bounded by ln 2.
double js_divergence(const BinnedDistribution& p, const BinnedDistribution& q);

// k-Wasserstein distance between two empirical distributions on R.
// Equal sizes use the order-statistics form ((1/n) sum |x_(i)-y_(i)|^k)^(1/k);
// unequal sizes integrate |F_x^{-1}(u) - F_y^{-1}(u)|^k exactly over the
// merged breakpoint grid {i/n_x} U {j/n_y}. Supports k in {1, 2}.
double wasserstein_empirical(const EmpiricalDistribution& x,
                             const EmpiricalDistribution& y, int k);

// Mean/covariance pair of a (possibly degenerate-to-univariate) Gaussian.
// The covariance must be symmetric within 1e-10 with eigenvalues >= -1e-10.
struct GaussianParams {
  GaussianParams(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

  // Univariate convenience: N(mu, sigma2).
  static GaussianParams univariate(double mu, double sigma2);

  Eigen::Index dim() const noexcept { return mean.size(); }
  double mu1d() const { return mean(0); }
  double sigma() const;  // d=1 standard deviation

  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

// Closed-form W2 between Gaussians:
//   d=1:  W2^2 = (mu1-mu0)^2 + (sigma1-sigma0)^2
//   d>1:  W2^2 = |mu1-mu0|^2 + tr(S0 + S1 - 2 (S1^1/2 S0 S1^1/2)^1/2)
double wasserstein_gaussian(const GaussianParams& g0, const GaussianParams& g1);

// Exhaustive minimum of ((1/n) sum |x_i - y_pi(i)|^k)^(1/k) over all
// couplings (permutations) of two equal-size samples. Testing oracle for
// wasserstein_empirical; n is capped at 8, larger throws SizeError.
double ot_cost_bruteforce(std::span<const double> x, std::span<const double> y,
                          int k);

}  // namespace fairscore
