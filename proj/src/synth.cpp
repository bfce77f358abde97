// SPDX-License-Identifier: Apache-2.0
#include "fairscore/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fairscore/numeric.hpp"

namespace fairscore {

namespace {

double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double kumaraswamy_mean(double a, double b) {
  // b * B(1 + 1/a, b) via lgamma, exact enough for scale factors.
  const double lg = std::lgamma(1.0 + 1.0 / a) + std::lgamma(b) -
                    std::lgamma(1.0 + 1.0 / a + b);
  return b * std::exp(lg);
}

double kumaraswamy_quantile(double u, double a, double b) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError("quantile argument must lie in [0,1]");
  }
  return std::pow(1.0 - std::pow(1.0 - u, 1.0 / b), 1.0 / a);
}

ScoreTable generate_synthetic(const SynthConfig& config) {
  if (config.groups.empty()) {
    throw ValidationError("synthetic config needs at least one group");
  }
  std::set<std::string> labels;
  for (const auto& g : config.groups) {
    if (g.label.empty() || !labels.insert(g.label).second) {
      throw ValidationError("group labels must be non-empty and distinct");
    }
    if (g.count == 0) {
      throw ValidationError("group '" + g.label + "' has zero records");
    }
    if (!(g.target_mean > 0.0 && g.target_mean < 1.0)) {
      throw ValidationError("group '" + g.label +
                            "' target mean must lie in (0,1)");
    }
    if (!(g.shape_a > 0.0 && g.shape_b > 0.0)) {
      throw ValidationError("group '" + g.label +
                            "' shape parameters must be positive");
    }
  }

  std::mt19937_64 rng(config.seed);
  ScoreTable table;
  table.columns = {"id", "score", "group", "outcome"};
  for (const auto& g : config.groups) {
    const double scale = g.target_mean / kumaraswamy_mean(g.shape_a,
                                                          g.shape_b);
    for (std::size_t k = 0; k < g.count; ++k) {
      const double u = next_uniform(rng);
      const double raw = scale * kumaraswamy_quantile(u, g.shape_a,
                                                      g.shape_b);
      const double score = std::clamp(raw, 0.0, 1.0);
      const int outcome = next_uniform(rng) < score ? 1 : 0;
      table.rows.push_back({g.label + "-" + std::to_string(k + 1),
                            format_double(score), g.label,
                            std::to_string(outcome)});
    }
  }
  return table;
}

}  // namespace fairscore
