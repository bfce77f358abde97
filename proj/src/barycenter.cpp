// SPDX-License-Identifier: Apache-2.0
#include "fairscore/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fairscore/numeric.hpp"
#include "fairscore/transport.hpp"

namespace fairscore {

namespace {

void require_unit_score(double score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw DomainError("score must lie in [0,1], got " + std::to_string(score));
  }
}

}  // namespace

ScalingTransform::ScalingTransform(double overall_mean,
                                   std::map<std::string, double> group_means)
    : overall_mean_(overall_mean), group_means_(std::move(group_means)) {
  if (group_means_.empty()) {
    throw ValidationError("scaling transform needs at least one group");
  }
  if (!(overall_mean_ > 0.0 && overall_mean_ <= 1.0)) {
    throw ValidationError("overall mean must lie in (0,1]");
  }
  for (const auto& [label, m] : group_means_) {
    if (m == 0.0) {
      throw DegenerateGroupError("group '" + label +
                                 "' has zero mean score, no scaling factor "
                                 "exists");
    }
    if (!(m > 0.0 && m <= 1.0)) {
      throw ValidationError("group '" + label + "' mean must lie in (0,1]");
    }
    factors_[label] = overall_mean_ / m;
  }
}

double ScalingTransform::factor(const std::string& group) const {
  auto it = factors_.find(group);
  if (it == factors_.end()) {
    throw UnknownGroupError("group '" + group + "' was not fitted");
  }
  return it->second;
}

ScaledScore ScalingTransform::apply(double score, const std::string& group)
    const {
  require_unit_score(score);
  const double raw = factor(group) * score;
  ScaledScore out;
  out.value = std::clamp(raw, 0.0, 1.0);
  out.clamped = out.value != raw;
  return out;
}

ScalingTransform fit_scaling(const GroupedScores& data) {
  std::map<std::string, std::vector<double>> per_group;
  std::vector<double> all;
  all.reserve(data.size());
  for (const auto& r : data.records()) {
    per_group[r.group].push_back(r.score);
    all.push_back(r.score);
  }
  std::map<std::string, double> means;
  for (const auto& [label, scores] : per_group) {
    means[label] = mean(scores);
  }
  return ScalingTransform(mean(all), std::move(means));
}

ScaledScore apply_scaling(const ScalingTransform& t, double score,
                          const std::string& group) {
  return t.apply(score, group);
}

BarycenterTransform::BarycenterTransform(
    std::map<std::string, EmpiricalDistribution> groups,
    std::map<std::string, double> weights)
    : groups_(std::move(groups)), weights_(std::move(weights)) {
  if (groups_.empty()) {
    throw ValidationError("barycenter transform needs at least one group");
  }
  if (groups_.size() != weights_.size()) {
    throw ValidationError("group and weight label sets differ");
  }
  double total = 0.0;
  for (const auto& [label, dist] : groups_) {
    auto it = weights_.find(label);
    if (it == weights_.end()) {
      throw ValidationError("no weight for group '" + label + "'");
    }
    if (!(it->second > 0.0 && it->second <= 1.0)) {
      throw ValidationError("weight for group '" + label +
                            "' must lie in (0,1]");
    }
    total += it->second;
    labels_.push_back(label);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("group weights must sum to 1, got " +
                          std::to_string(total));
  }
}

double BarycenterTransform::apply(double score, const std::string& group)
    const {
  require_unit_score(score);
  auto own = groups_.find(group);
  if (own == groups_.end()) {
    throw UnknownGroupError("group '" + group + "' was not fitted");
  }
  if (is_identity()) {
    return score;
  }
  const double u = own->second.cdf(score);
  // Own-group term: the raw score, pulled into the fitted range when it
  // falls outside (off-support inputs only). Keeps the output inside the
  // envelope of the fitted samples, like every cross-group term.
  const double own_term =
      std::clamp(score, own->second.min(), own->second.max());
  // Accumulation runs in sorted label order for every caller. Same-rank
  // records in different groups then sum the same terms in the same order
  // and land on bit-identical fair scores.
  double acc = 0.0;
  for (const auto& label : labels_) {
    const auto& dist = groups_.at(label);
    const double term = (label == group) ? own_term : dist.quantile(u);
    acc += weights_.at(label) * term;
  }
  return acc;
}

BarycenterTransform fit_barycenter(const GroupedScores& data) {
  GroupPartition parts = partition_by_group(data);
  BarycenterTransform t(std::move(parts.distributions),
                        std::move(parts.weights));
  if (t.is_identity()) {
    t.set_warning("single group");
  }
  return t;
}

double apply_barycenter(const BarycenterTransform& t, double score,
                        const std::string& group) {
  return t.apply(score, group);
}

Eigen::MatrixXd barycenter_fixed_point_map(
    const Eigen::MatrixXd& s, const std::vector<GaussianParams>& params,
    const std::vector<double>& weights) {
  const Eigen::MatrixXd root = matrix_sqrt(s);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(s.rows(), s.cols());
  for (std::size_t i = 0; i < params.size(); ++i) {
    Eigen::MatrixXd inner = root * params[i].covariance * root;
    inner = ((inner + inner.transpose()) / 2.0).eval();
    acc += weights[i] * matrix_sqrt(inner);
  }
  return acc;
}

GaussianParams gaussian_barycenter(const std::vector<GaussianParams>& params,
                                   const std::vector<double>& weights) {
  if (params.empty() || params.size() != weights.size()) {
    throw ValidationError(
        "barycenter needs one positive weight per Gaussian, summing to 1");
  }
  const Eigen::Index d = params.front().dim();
  double total = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].dim() != d) {
      throw DimError("Gaussian dimensions differ across barycenter inputs");
    }
    if (!(weights[i] > 0.0)) {
      throw ValidationError("barycenter weights must be positive");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        params[i].covariance, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success ||
        !(es.eigenvalues().minCoeff() > 0.0)) {
      throw MatrixError(
          "barycenter inputs must have positive-definite covariances");
    }
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("barycenter weights must sum to 1, got " +
                          std::to_string(total));
  }

  Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < params.size(); ++i) {
    mu += weights[i] * params[i].mean;
    s += weights[i] * params[i].covariance;
  }

  constexpr double tol = 1e-8;
  constexpr int max_iter = 500;
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    const Eigen::MatrixXd t = barycenter_fixed_point_map(s, params, weights);
    residual = (s - t).norm();
    if (residual <= tol) {
      return GaussianParams(std::move(mu), std::move(s));
    }
    // Alvarez-Esteban et al. update: S <- S^{-1/2} T(S)^2 S^{-1/2}, which
    // keeps iterates symmetric positive-definite and converges to the
    // unique fixed point.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    if (es.info() != Eigen::Success ||
        !(es.eigenvalues().minCoeff() > 0.0)) {
      throw MatrixError("barycenter iterate lost positive-definiteness");
    }
    const Eigen::MatrixXd inv_root =
        es.eigenvectors() *
        es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().transpose();
    s = inv_root * t * t * inv_root;
    s = ((s + s.transpose()) / 2.0).eval();
  }
  throw ConvergenceError("barycenter fixed point did not converge within " +
                             std::to_string(max_iter) + " iterations",
                         residual);
}

}  // namespace fairscore
