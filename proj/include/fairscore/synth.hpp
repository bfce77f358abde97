// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairscore/csv.hpp"
#include "fairscore/errors.hpp"

namespace fairscore {

// One synthetic group: Kumaraswamy(a, b) base scores rescaled so the
// expected score hits `target_mean`, with Bernoulli(score) outcomes. The
// balance property then holds in expectation by construction.
struct SynthGroupSpec {
  std::string label;
  std::size_t count = 0;
  double target_mean = 0.1;
  double shape_a = 2.0;
  double shape_b = 5.0;
};

struct SynthConfig {
  std::uint64_t seed = 0;
  std::vector<SynthGroupSpec> groups;
};

// Mean of Kumaraswamy(a, b) on [0,1]: b * B(1 + 1/a, b).
double kumaraswamy_mean(double a, double b);

// Inverse CDF (1 - (1 - u)^{1/b})^{1/a} for u in [0,1].
double kumaraswamy_quantile(double u, double a, double b);

// Deterministic table for a given config: groups in listed order, ids
// `<label>-<k>`, columns id,score,group,outcome. Uniform variates come
// from the raw mt19937_64 stream ((x >> 11) * 2^-53), not from
// std::uniform_real_distribution, whose output is
// implementation-defined. Throws ValidationError on empty groups,
// duplicate labels, a target mean outside (0,1), or non-positive shapes.
ScoreTable generate_synthetic(const SynthConfig& config);

}  // namespace fairscore
