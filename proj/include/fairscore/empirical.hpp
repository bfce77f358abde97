// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairscore/errors.hpp"

namespace fairscore {

// The empirical distribution of a finite sample: the plug-in measure that
// puts mass 1/n on every sample value, duplicates included.
//
// cdf() is the right-continuous empirical distribution function
// F(x) = #{values <= x} / n, and quantile() is its generalized inverse
// F^{-1}(u) = inf{x : F(x) >= u}, evaluated exactly on the step function
// (no interpolation). quantile(0) returns the sample minimum so transported
// scores stay inside the observed range.
class EmpiricalDistribution {
 public:
  // Sorts a copy of the samples. Throws EmptySampleError on an empty input
  // and InvalidValueError (with the offending index) on non-finite values.
  explicit EmpiricalDistribution(std::vector<double> samples);

  // Fraction of the sample <= x.
  double cdf(double x) const noexcept;

  // Smallest sample value whose cdf reaches u. Throws DomainError unless
  // 0 <= u <= 1.
  double quantile(double u) const;

  std::size_t size() const noexcept { return values_.size(); }
  double min() const noexcept { return values_.front(); }
  double max() const noexcept { return values_.back(); }

  // Sorted, non-decreasing; ties preserved.
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

// Named constructor matching the operation vocabulary used across the
// library and the CLI.
EmpiricalDistribution build_ecdf(std::vector<double> samples);

// One scored record: a stable id, a score in [0,1], a group label, and an
// optional observed binary outcome.
struct ScoreRecord {
  std::string id;
  double score = 0.0;
  std::string group;
  std::optional<int> outcome;
};

// A validated score table. Ids are unique, scores lie in [0,1], group labels
// are non-empty, outcomes (when present) are 0/1. Immutable after
// construction.
class GroupedScores {
 public:
  explicit GroupedScores(std::vector<ScoreRecord> records);

  const std::vector<ScoreRecord>& records() const noexcept { return records_; }

  // Distinct labels, sorted lexicographically.
  const std::vector<std::string>& group_labels() const noexcept {
    return labels_;
  }

  std::size_t size() const noexcept { return records_.size(); }

  // True when every record carries an outcome.
  bool has_outcomes() const noexcept { return has_outcomes_; }

 private:
  std::vector<ScoreRecord> records_;
  std::vector<std::string> labels_;
  bool has_outcomes_ = false;
};

// Per-group empirical distributions plus the empirical group weights
// w_g = n_g / n. Keys iterate in sorted label order.
struct GroupPartition {
  std::map<std::string, EmpiricalDistribution> distributions;
  std::map<std::string, double> weights;
};

GroupPartition partition_by_group(const GroupedScores& data);

}  // namespace fairscore
