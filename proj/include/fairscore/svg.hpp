// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fairscore/divergence.hpp"
#include "fairscore/empirical.hpp"

namespace fairscore {

// Quantile pairs (F_a^{-1}(u_k), F_b^{-1}(u_k)) on the grid u_k = k/n,
// k = 1..n, with n = max of the two sample sizes. For equal sizes this is
// exactly the sorted-sample pairing. Points on the diagonal mean the two
// distributions agree at that quantile.
std::vector<std::pair<double, double>> qq_points(
    const EmpiricalDistribution& a, const EmpiricalDistribution& b);

// Q-Q matching plot: the quantile pairs with a dashed diagonal reference
// line. Output is a self-contained SVG document with inline styling;
// identical inputs give identical bytes.
std::string qq_plot_svg(const EmpiricalDistribution& a,
                        const EmpiricalDistribution& b,
                        const std::string& label_a,
                        const std::string& label_b);

// Bar rendering of a binned distribution, same determinism contract.
std::string density_plot_svg(const BinnedDistribution& hist,
                             const std::string& label);

}  // namespace fairscore
