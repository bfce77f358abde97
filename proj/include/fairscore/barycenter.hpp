// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairscore/divergence.hpp"
#include "fairscore/empirical.hpp"
#include "fairscore/errors.hpp"

namespace fairscore {

// Result of applying a transform to one score: the transformed value plus
// a flag telling whether it had to be clamped into [0,1].
struct ScaledScore {
  double value = 0.0;
  bool clamped = false;
};

// Proportional-scaling mitigation: every score in group g is multiplied by
// the ratio overall mean / group-g mean, so all group means match the
// overall mean afterwards. The crudest baseline that restores equal means
// while keeping the global average intact.
class ScalingTransform {
 public:
  // Throws DegenerateGroupError when any mean is zero (no factor exists)
  // and ValidationError on means outside [0,1] or an empty group map.
  ScalingTransform(double overall_mean,
                   std::map<std::string, double> group_means);

  // factor_g * score, clamped into [0,1] with the flag set when clamping
  // fired. Unknown group throws UnknownGroupError.
  ScaledScore apply(double score, const std::string& group) const;

  double factor(const std::string& group) const;

  double overall_mean() const noexcept { return overall_mean_; }
  const std::map<std::string, double>& group_means() const noexcept {
    return group_means_;
  }
  const std::map<std::string, double>& factors() const noexcept {
    return factors_;
  }

 private:
  double overall_mean_ = 0.0;
  std::map<std::string, double> group_means_;
  std::map<std::string, double> factors_;
};

ScalingTransform fit_scaling(const GroupedScores& data);

ScaledScore apply_scaling(const ScalingTransform& t, double score,
                          const std::string& group);

// Barycenter mitigation: a score x in group s becomes the weighted average
// of its quantile counterparts across all groups,
//
//   m*(x, s) = sum_g w_g * F_g^{-1}(F_s(x)),
//
// with the own-group term kept as the raw score (identical on the fitted
// support, where F_s^{-1}(F_s(x)) = x). Weights are the empirical group
// proportions. Terms accumulate in sorted group-label order for every
// group, so records with the same rank in different equal-sized groups map
// to bit-identical fair scores.
//
// Fitted on a single group the transform is the identity and carries a
// warning instead of failing, so pipelines degrade gracefully.
class BarycenterTransform {
 public:
  // Throws ValidationError when keys disagree or weights are outside
  // (0,1] or do not sum to 1 within 1e-12.
  BarycenterTransform(std::map<std::string, EmpiricalDistribution> groups,
                      std::map<std::string, double> weights);

  // Throws UnknownGroupError for a group not fitted and DomainError for a
  // score outside [0,1]. Non-decreasing in score within each group.
  double apply(double score, const std::string& group) const;

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::map<std::string, EmpiricalDistribution>& groups() const noexcept {
    return groups_;
  }
  const std::map<std::string, double>& weights() const noexcept {
    return weights_;
  }

  bool is_identity() const noexcept { return groups_.size() < 2; }
  const std::optional<std::string>& warning() const noexcept {
    return warning_;
  }
  void set_warning(std::string w) { warning_ = std::move(w); }

 private:
  std::map<std::string, EmpiricalDistribution> groups_;
  std::map<std::string, double> weights_;
  std::vector<std::string> labels_;
  std::optional<std::string> warning_;
};

BarycenterTransform fit_barycenter(const GroupedScores& data);

double apply_barycenter(const BarycenterTransform& t, double score,
                        const std::string& group);

// Wasserstein barycenter of Gaussians: mean is the weighted mean, the
// covariance S solves S = sum_i w_i (S^{1/2} Sigma_i S^{1/2})^{1/2} by
// fixed-point iteration (initialized at the weighted covariance mean,
// Frobenius residual <= 1e-8, at most 500 iterations). Non-convergence
// throws ConvergenceError carrying the last residual.
GaussianParams gaussian_barycenter(const std::vector<GaussianParams>& params,
                                   const std::vector<double>& weights);

// One application of the fixed-point map T(S) = sum_i w_i
// (S^{1/2} Sigma_i S^{1/2})^{1/2}; the barycenter residual is
// ||S - T(S)||_F. Exposed so callers can audit convergence.
Eigen::MatrixXd barycenter_fixed_point_map(
    const Eigen::MatrixXd& s, const std::vector<GaussianParams>& params,
    const std::vector<double>& weights);

}  // namespace fairscore
