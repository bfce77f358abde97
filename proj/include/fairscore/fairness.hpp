// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairscore/divergence.hpp"
#include "fairscore/empirical.hpp"
#include "fairscore/errors.hpp"

namespace fairscore {

// Distance family for group-pair comparisons. W1/W2 act on the raw
// samples; TV/KL/JS act on shared-bin histograms.
enum class Metric { W1, W2, TV, KL, JS };

// Largest absolute difference between any two group mean scores; zero
// exactly when weak demographic parity holds on the sample. Throws
// DomainError with fewer than two groups.
double weak_dp_gap(const GroupedScores& data);

// Pairwise distances between group-conditional score distributions, keyed
// by ordered label pair (g, h) for every g != h. Symmetric metrics carry
// the same value in both orientations; KL generally does not. Binned
// metrics need explicit edges and propagate divergence-module errors
// (including SupportError for an infinite unsmoothed KL).
std::map<std::pair<std::string, std::string>, double> strong_dp_distance(
    const GroupedScores& data, Metric metric,
    const std::vector<double>& edges = {});

// Balance diagnostic: mean prediction against observed outcome frequency.
struct BalanceResult {
  double mean_score = 0.0;
  double mean_outcome = 0.0;
  double gap = 0.0;           // |mean_score - mean_outcome|
  double relative_gap = 0.0;  // gap / mean_outcome; 0 when both are 0
  bool balanced = false;      // relative_gap <= tolerance
};

// Throws MissingOutcomeError unless every record carries an outcome.
// With a zero outcome frequency the data is balanced only when the gap is
// exactly zero.
BalanceResult balance_check(const GroupedScores& data,
                            double tolerance = 0.01);

// Per-group sample size and mean score.
struct GroupStats {
  std::size_t count = 0;
  double mean = 0.0;
};

// All pairwise distances for one unordered group pair (a < b). KL entries
// are empty when the divergence is infinite on the chosen bins.
struct PairDistances {
  std::string a;
  std::string b;
  double w1 = 0.0;
  double w2 = 0.0;
  double tv = 0.0;
  double js = 0.0;
  std::optional<double> kl_ab;
  std::optional<double> kl_ba;
};

// Metrics for one score column: group stats, weak/strong demographic
// parity figures, binned densities per group, and the balance diagnostic
// when outcomes are available. A single-group column reports a zero gap
// and no pairs.
struct MetricsBlock {
  std::map<std::string, GroupStats> groups;
  double overall_mean = 0.0;
  double weak_gap = 0.0;
  std::vector<PairDistances> pairs;
  std::map<std::string, std::vector<double>> densities;
  std::optional<BalanceResult> balance;
};

// Diagnostics for one model (one score column), before and optionally
// after mitigation.
struct ModelReport {
  std::string model;
  MetricsBlock before;
  std::optional<MetricsBlock> after;
};

// Full report: shared bin edges, the balance tolerance used, one entry
// per model.
struct FairnessReport {
  std::vector<double> bin_edges;
  double balance_tolerance = 0.01;
  std::vector<ModelReport> models;
};

// Metrics for one score column. When `mitigated` is given it must hold
// the same record ids with the same group labels as `raw` (JoinError
// otherwise) and fills the after-block.
ModelReport build_model_report(const std::string& model,
                               const GroupedScores& raw,
                               const GroupedScores* mitigated,
                               const std::vector<double>& edges,
                               double balance_tolerance);

// Single-model convenience wrapper around build_model_report.
FairnessReport build_report(const GroupedScores& raw,
                            const GroupedScores* mitigated,
                            const std::vector<double>& edges,
                            double balance_tolerance = 0.01);

}  // namespace fairscore
