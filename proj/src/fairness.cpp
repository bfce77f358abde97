// SPDX-License-Identifier: Apache-2.0
#include "fairscore/fairness.hpp"

#include <algorithm>
#include <cmath>

#include "fairscore/numeric.hpp"

namespace fairscore {

namespace {

std::map<std::string, std::vector<double>> scores_by_group(
    const GroupedScores& data) {
  std::map<std::string, std::vector<double>> out;
  for (const auto& r : data.records()) {
    out[r.group].push_back(r.score);
  }
  return out;
}

std::map<std::string, double> group_means(const GroupedScores& data) {
  std::map<std::string, double> out;
  for (auto& [label, scores] : scores_by_group(data)) {
    out[label] = mean(scores);
  }
  return out;
}

}  // namespace

double weak_dp_gap(const GroupedScores& data) {
  if (data.group_labels().size() < 2) {
    throw DomainError("weak demographic parity needs at least two groups");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [label, m] : group_means(data)) {
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return hi - lo;
}

std::map<std::pair<std::string, std::string>, double> strong_dp_distance(
    const GroupedScores& data, Metric metric,
    const std::vector<double>& edges) {
  const auto& labels = data.group_labels();
  if (labels.size() < 2) {
    throw DomainError("strong demographic parity needs at least two groups");
  }
  const bool binned =
      metric == Metric::TV || metric == Metric::KL || metric == Metric::JS;
  if (binned && edges.size() < 2) {
    throw ValidationError("TV/KL/JS need shared bin edges");
  }

  GroupPartition parts = partition_by_group(data);
  std::map<std::string, BinnedDistribution> hists;
  if (binned) {
    for (const auto& [label, dist] : parts.distributions) {
      hists.emplace(label, bin_scores(dist, edges));
    }
  }

  std::map<std::pair<std::string, std::string>, double> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      const auto& a = labels[i];
      const auto& b = labels[j];
      switch (metric) {
        case Metric::W1: {
          const double d = wasserstein_empirical(parts.distributions.at(a),
                                                 parts.distributions.at(b), 1);
          out[{a, b}] = d;
          out[{b, a}] = d;
          break;
        }
        case Metric::W2: {
          const double d = wasserstein_empirical(parts.distributions.at(a),
                                                 parts.distributions.at(b), 2);
          out[{a, b}] = d;
          out[{b, a}] = d;
          break;
        }
        case Metric::TV: {
          const double d = total_variation(hists.at(a), hists.at(b));
          out[{a, b}] = d;
          out[{b, a}] = d;
          break;
        }
        case Metric::JS: {
          const double d = js_divergence(hists.at(a), hists.at(b));
          out[{a, b}] = d;
          out[{b, a}] = d;
          break;
        }
        case Metric::KL: {
          out[{a, b}] = kl_divergence(hists.at(a), hists.at(b));
          out[{b, a}] = kl_divergence(hists.at(b), hists.at(a));
          break;
        }
      }
    }
  }
  return out;
}

BalanceResult balance_check(const GroupedScores& data, double tolerance) {
  if (!data.has_outcomes()) {
    throw MissingOutcomeError(
        "balance check needs an outcome for every record");
  }
  if (!(tolerance > 0.0)) {
    throw ValidationError("balance tolerance must be positive");
  }
  std::vector<double> scores;
  std::vector<double> outcomes;
  scores.reserve(data.size());
  outcomes.reserve(data.size());
  for (const auto& r : data.records()) {
    scores.push_back(r.score);
    outcomes.push_back(static_cast<double>(*r.outcome));
  }
  BalanceResult res;
  res.mean_score = mean(scores);
  res.mean_outcome = mean(outcomes);
  res.gap = std::abs(res.mean_score - res.mean_outcome);
  if (res.mean_outcome == 0.0) {
    res.relative_gap = res.gap == 0.0
                           ? 0.0
                           : std::numeric_limits<double>::infinity();
  } else {
    res.relative_gap = res.gap / res.mean_outcome;
  }
  res.balanced = res.relative_gap <= tolerance;
  return res;
}

namespace {

MetricsBlock build_block(const GroupedScores& data,
                         const std::vector<double>& edges,
                         double balance_tolerance) {
  MetricsBlock block;
  auto by_group = scores_by_group(data);
  std::vector<double> all;
  all.reserve(data.size());
  for (auto& [label, scores] : by_group) {
    GroupStats st;
    st.count = scores.size();
    st.mean = mean(scores);
    block.groups[label] = st;
    all.insert(all.end(), scores.begin(), scores.end());
  }
  block.overall_mean = mean(all);

  GroupPartition parts = partition_by_group(data);
  std::map<std::string, BinnedDistribution> hists;
  for (const auto& [label, dist] : parts.distributions) {
    auto h = bin_scores(dist, edges);
    block.densities[label] = h.masses;
    hists.emplace(label, std::move(h));
  }

  const auto& labels = data.group_labels();
  if (labels.size() >= 2) {
    block.weak_gap = weak_dp_gap(data);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (std::size_t j = i + 1; j < labels.size(); ++j) {
        PairDistances pd;
        pd.a = labels[i];
        pd.b = labels[j];
        const auto& da = parts.distributions.at(pd.a);
        const auto& db = parts.distributions.at(pd.b);
        pd.w1 = wasserstein_empirical(da, db, 1);
        pd.w2 = wasserstein_empirical(da, db, 2);
        pd.tv = total_variation(hists.at(pd.a), hists.at(pd.b));
        pd.js = js_divergence(hists.at(pd.a), hists.at(pd.b));
        // Unsmoothed KL can be infinite on disjoint bins; the report
        // records that as an absent value rather than failing.
        try {
          pd.kl_ab = kl_divergence(hists.at(pd.a), hists.at(pd.b));
        } catch (const SupportError&) {
        }
        try {
          pd.kl_ba = kl_divergence(hists.at(pd.b), hists.at(pd.a));
        } catch (const SupportError&) {
        }
        block.pairs.push_back(std::move(pd));
      }
    }
  }

  if (data.has_outcomes()) {
    block.balance = balance_check(data, balance_tolerance);
  }
  return block;
}

}  // namespace

ModelReport build_model_report(const std::string& model,
                               const GroupedScores& raw,
                               const GroupedScores* mitigated,
                               const std::vector<double>& edges,
                               double balance_tolerance) {
  ModelReport report;
  report.model = model;
  report.before = build_block(raw, edges, balance_tolerance);
  if (mitigated != nullptr) {
    if (mitigated->size() != raw.size()) {
      throw JoinError("raw and mitigated tables differ in size: " +
                      std::to_string(raw.size()) + " vs " +
                      std::to_string(mitigated->size()));
    }
    std::map<std::string, std::string> raw_groups;
    for (const auto& r : raw.records()) {
      raw_groups.emplace(r.id, r.group);
    }
    for (const auto& r : mitigated->records()) {
      auto it = raw_groups.find(r.id);
      if (it == raw_groups.end()) {
        throw JoinError("mitigated id '" + r.id + "' is not in the raw table");
      }
      if (it->second != r.group) {
        throw JoinError("id '" + r.id + "' changed group between tables");
      }
    }
    report.after = build_block(*mitigated, edges, balance_tolerance);
  }
  return report;
}

FairnessReport build_report(const GroupedScores& raw,
                            const GroupedScores* mitigated,
                            const std::vector<double>& edges,
                            double balance_tolerance) {
  FairnessReport report;
  report.bin_edges = edges;
  report.balance_tolerance = balance_tolerance;
  report.models.push_back(build_model_report("score", raw, mitigated, edges,
                                             balance_tolerance));
  return report;
}

}  // namespace fairscore
