// SPDX-License-Identifier: Apache-2.0
#include "fairscore/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

namespace fairscore {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : values_(std::move(samples)) {
  if (values_.empty()) {
    throw EmptySampleError("empirical distribution needs at least one sample");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InvalidValueError("non-finite sample at index " + std::to_string(i),
                              i);
    }
  }
  std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::cdf(double x) const noexcept {
  auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) /
         static_cast<double>(values_.size());
}

double EmpiricalDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError("quantile level must lie in [0,1], got " +
                      std::to_string(u));
  }
  const auto n = values_.size();
  if (u <= 0.0) {
    return values_.front();
  }
  // Smallest i in [1,n] with i/n >= u. ceil() can land one off after the
  // multiply rounds; the adjustment loops restore the exact generalized
  // inverse with respect to cdf()'s own arithmetic.
  double scaled = u * static_cast<double>(n);
  auto idx = static_cast<std::size_t>(std::ceil(scaled));
  idx = std::clamp<std::size_t>(idx, 1, n);
  while (idx > 1 &&
         static_cast<double>(idx - 1) / static_cast<double>(n) >= u) {
    --idx;
  }
  while (idx < n && static_cast<double>(idx) / static_cast<double>(n) < u) {
    ++idx;
  }
  return values_[idx - 1];
}

EmpiricalDistribution build_ecdf(std::vector<double> samples) {
  return EmpiricalDistribution(std::move(samples));
}

GroupedScores::GroupedScores(std::vector<ScoreRecord> records)
    : records_(std::move(records)) {
  if (records_.empty()) {
    throw EmptySampleError("score table has no records");
  }
  std::unordered_set<std::string> seen_ids;
  seen_ids.reserve(records_.size());
  has_outcomes_ = true;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const ScoreRecord& r = records_[i];
    if (r.id.empty()) {
      throw InvalidValueError("record " + std::to_string(i) + " has empty id",
                              i);
    }
    if (!seen_ids.insert(r.id).second) {
      throw ValidationError("duplicate record id '" + r.id + "'");
    }
    if (!std::isfinite(r.score) || r.score < 0.0 || r.score > 1.0) {
      throw InvalidValueError("record '" + r.id + "' has score " +
                                  std::to_string(r.score) +
                                  " outside [0,1]",
                              i);
    }
    if (r.group.empty()) {
      throw InvalidValueError("record '" + r.id + "' has empty group label",
                              i);
    }
    if (r.outcome.has_value()) {
      if (*r.outcome != 0 && *r.outcome != 1) {
        throw InvalidValueError("record '" + r.id + "' has outcome " +
                                    std::to_string(*r.outcome) +
                                    ", expected 0 or 1",
                                i);
      }
    } else {
      has_outcomes_ = false;
    }
  }
  for (const ScoreRecord& r : records_) {
    labels_.push_back(r.group);
  }
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
}

GroupPartition partition_by_group(const GroupedScores& data) {
  std::map<std::string, std::vector<double>> by_group;
  for (const ScoreRecord& r : data.records()) {
    by_group[r.group].push_back(r.score);
  }
  GroupPartition out;
  const auto total = static_cast<double>(data.size());
  for (auto& [label, scores] : by_group) {
    out.weights.emplace(label,
                        static_cast<double>(scores.size()) / total);
    out.distributions.emplace(label, build_ecdf(std::move(scores)));
  }
  return out;
}

}  // namespace fairscore
