# SPDX-License-Identifier: Apache-2.0
"""Score fairness toolkit.

Measures discrimination between group-conditional score distributions
(Wasserstein, total variation, KL, Jensen-Shannon) and mitigates it by
transporting the distributions to their weighted barycenter, or by the
proportional-scaling baseline. The heavy lifting lives in the compiled
extension module; this package re-exports its public surface.
"""

from fairscore._core import (
    AffineMap,
    BalanceResult,
    BarycenterTransform,
    BinnedDistribution,
    EmpiricalDistribution,
    GaussianParams,
    GroupedScores,
    NumericalError,
    ScaledScore,
    ScalingTransform,
    TransportMap,
    ValidationError,
    balance_check,
    bin_scores,
    fit_barycenter,
    fit_gaussian_map,
    fit_monotone_map,
    fit_scaling,
    gaussian_barycenter,
    js_divergence,
    kl_divergence,
    matrix_sqrt,
    ot_cost_bruteforce,
    strong_dp_distance,
    synthetic_csv,
    total_variation,
    transform_from_json,
    uniform_edges,
    wasserstein,
    wasserstein_gaussian,
    weak_dp_gap,
)

__all__ = [
    "AffineMap",
    "BalanceResult",
    "BarycenterTransform",
    "BinnedDistribution",
    "EmpiricalDistribution",
    "GaussianParams",
    "GroupedScores",
    "NumericalError",
    "ScaledScore",
    "ScalingTransform",
    "TransportMap",
    "ValidationError",
    "balance_check",
    "bin_scores",
    "fit_barycenter",
    "fit_gaussian_map",
    "fit_monotone_map",
    "fit_scaling",
    "gaussian_barycenter",
    "js_divergence",
    "kl_divergence",
    "matrix_sqrt",
    "ot_cost_bruteforce",
    "strong_dp_distance",
    "synthetic_csv",
    "total_variation",
    "transform_from_json",
    "uniform_edges",
    "wasserstein",
    "wasserstein_gaussian",
    "weak_dp_gap",
]
