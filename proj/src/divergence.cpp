// SPDX-License-Identifier: Apache-2.0
#include "fairscore/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "fairscore/transport.hpp"

namespace fairscore {

namespace {

void require_shared_edges(const BinnedDistribution& p,
                          const BinnedDistribution& q) {
  if (p.edges != q.edges) {
    throw EdgeMismatchError(
        "binned distributions must share identical bin edges");
  }
}

// One term of the KL sum with the 0*ln0 := 0 convention. Infinite terms are
// the caller's concern.
double kl_sum(const std::vector<double>& p, const std::vector<double>& q,
              bool allow_zero_q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) {
      continue;
    }
    if (q[i] == 0.0) {
      if (!allow_zero_q) {
        throw SupportError("KL divergence is infinite: q has zero mass in bin " +
                           std::to_string(i) + " where p does not");
      }
      return std::numeric_limits<double>::infinity();
    }
    sum += p[i] * std::log(p[i] / q[i]);
  }
  // Negative only through rounding; the true value is >= 0 (Gibbs).
  return sum < 0.0 ? 0.0 : sum;
}

double cost_term(double a, double b, int k) {
  if (k == 1) {
    return std::abs(a - b);
  }
  if (k == 2) {
    const double d = a - b;
    return d * d;
  }
  return std::pow(std::abs(a - b), k);
}

double cost_root(double total, int k) {
  if (k == 1) {
    return total;
  }
  if (k == 2) {
    return std::sqrt(total);
  }
  return std::pow(total, 1.0 / static_cast<double>(k));
}

void require_order(int k) {
  if (k < 1) {
    throw DomainError("Wasserstein order must be a positive integer, got " +
                      std::to_string(k));
  }
}

}  // namespace

BinnedDistribution::BinnedDistribution(std::vector<double> edges_in,
                                       std::vector<double> masses_in)
    : edges(std::move(edges_in)), masses(std::move(masses_in)) {
  if (edges.size() < 2) {
    throw ValidationError("binned distribution needs at least one bin");
  }
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) {
      throw ValidationError("bin edges must be strictly increasing");
    }
  }
  if (masses.size() != edges.size() - 1) {
    throw ValidationError("expected " + std::to_string(edges.size() - 1) +
                          " masses, got " + std::to_string(masses.size()));
  }
  double sum = 0.0;
  for (double m : masses) {
    if (!(m >= 0.0)) {
      throw ValidationError("bin masses must be non-negative");
    }
    sum += m;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("bin masses must sum to 1, got " +
                          std::to_string(sum));
  }
}

std::vector<double> uniform_edges(std::size_t bins, double lo, double hi) {
  if (bins == 0 || !(lo < hi)) {
    throw ValidationError("uniform_edges needs bins >= 1 and lo < hi");
  }
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = lo + (hi - lo) * static_cast<double>(i) /
                        static_cast<double>(bins);
  }
  edges.back() = hi;
  return edges;
}

BinnedDistribution bin_scores(const EmpiricalDistribution& dist,
                              std::vector<double> edges) {
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) {
      throw ValidationError("bin edges must be strictly increasing");
    }
  }
  if (edges.size() < 2) {
    throw ValidationError("binning needs at least one bin");
  }
  std::vector<double> counts(edges.size() - 1, 0.0);
  for (double v : dist.values()) {
    if (v < edges.front() || v > edges.back()) {
      throw BinRangeError("sample value " + std::to_string(v) +
                          " outside bin range [" + std::to_string(edges.front()) +
                          ", " + std::to_string(edges.back()) + "]");
    }
    // First bin is [e0, e1]; bin b>0 is (e_b, e_{b+1}].
    auto it = std::lower_bound(edges.begin(), edges.end(), v);
    auto j = static_cast<std::size_t>(it - edges.begin());
    std::size_t bin = (j == 0) ? 0 : j - 1;
    counts[bin] += 1.0;
  }
  const auto n = static_cast<double>(dist.size());
  for (double& c : counts) {
    c /= n;
  }
  return BinnedDistribution(std::move(edges), std::move(counts));
}

double total_variation(const BinnedDistribution& p, const BinnedDistribution& q,
                       bool one_sided) {
  require_shared_edges(p, q);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.masses.size(); ++i) {
    const double d = p.masses[i] - q.masses[i];
    if (one_sided) {
      acc += std::max(d, 0.0);
    } else {
      acc += std::abs(d);
    }
  }
  return one_sided ? acc : 0.5 * acc;
}

double kl_divergence(const BinnedDistribution& p, const BinnedDistribution& q,
                     bool smooth) {
  require_shared_edges(p, q);
  if (!smooth) {
    return kl_sum(p.masses, q.masses, /*allow_zero_q=*/false);
  }
  constexpr double eps = 1e-9;
  auto smoothed = [](const std::vector<double>& m) {
    std::vector<double> out(m.size());
    const double total = 1.0 + eps * static_cast<double>(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      out[i] = (m[i] + eps) / total;
    }
    return out;
  };
  return kl_sum(smoothed(p.masses), smoothed(q.masses),
                /*allow_zero_q=*/false);
}

double js_divergence(const BinnedDistribution& p,
                     const BinnedDistribution& q) {
  require_shared_edges(p, q);
  std::vector<double> mix(p.masses.size());
  for (std::size_t i = 0; i < mix.size(); ++i) {
    mix[i] = 0.5 * (p.masses[i] + q.masses[i]);
  }
  // mix is zero only where both inputs are, so both terms stay finite.
  const double a = kl_sum(p.masses, mix, /*allow_zero_q=*/true);
  const double b = kl_sum(q.masses, mix, /*allow_zero_q=*/true);
  return 0.5 * a + 0.5 * b;
}

double wasserstein_empirical(const EmpiricalDistribution& x,
                             const EmpiricalDistribution& y, int k) {
  require_order(k);
  const auto& xs = x.values();
  const auto& ys = y.values();
  const std::size_t nx = xs.size();
  const std::size_t ny = ys.size();

  if (nx == ny) {
    double total = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
      total += cost_term(xs[i], ys[i], k);
    }
    return cost_root(total / static_cast<double>(nx), k);
  }

  // Both quantile functions are step functions with breakpoints on
  // {i/nx} and {j/ny}; integrate exactly piece by piece over the merged
  // grid. Breakpoint comparisons use integer cross-multiplication so no
  // piece is ever split or skipped by rounding.
  double total = 0.0;
  double u_prev = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < nx && j < ny) {
    const auto lhs = static_cast<unsigned __int128>(i + 1) * ny;
    const auto rhs = static_cast<unsigned __int128>(j + 1) * nx;
    const double u_next = (lhs <= rhs)
                              ? static_cast<double>(i + 1) /
                                    static_cast<double>(nx)
                              : static_cast<double>(j + 1) /
                                    static_cast<double>(ny);
    total += (u_next - u_prev) * cost_term(xs[i], ys[j], k);
    if (lhs <= rhs) {
      ++i;
    }
    if (rhs <= lhs) {
      ++j;
    }
    u_prev = u_next;
  }
  return cost_root(total, k);
}

GaussianParams::GaussianParams(Eigen::VectorXd mean_in,
                               Eigen::MatrixXd covariance_in)
    : mean(std::move(mean_in)), covariance(std::move(covariance_in)) {
  if (mean.size() < 1) {
    throw DimError("Gaussian mean must have dimension >= 1");
  }
  if (covariance.rows() != mean.size() || covariance.cols() != mean.size()) {
    throw DimError("covariance shape does not match mean dimension");
  }
  const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * scale) {
    throw MatrixError("covariance is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(covariance,
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw MatrixError("eigendecomposition of covariance failed");
  }
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw MatrixError("covariance is not positive semi-definite");
  }
}

GaussianParams GaussianParams::univariate(double mu, double sigma2) {
  Eigen::VectorXd m(1);
  m << mu;
  Eigen::MatrixXd c(1, 1);
  c << sigma2;
  return GaussianParams(std::move(m), std::move(c));
}

double GaussianParams::sigma() const {
  if (dim() != 1) {
    throw DimError("sigma() is defined for univariate Gaussians only");
  }
  return std::sqrt(std::max(covariance(0, 0), 0.0));
}

double wasserstein_gaussian(const GaussianParams& g0,
                            const GaussianParams& g1) {
  if (g0.dim() != g1.dim()) {
    throw DimError("Gaussian dimensions differ: " + std::to_string(g0.dim()) +
                   " vs " + std::to_string(g1.dim()));
  }
  if (g0.dim() == 1) {
    const double dmu = g1.mu1d() - g0.mu1d();
    const double dsigma = g1.sigma() - g0.sigma();
    return std::sqrt(dmu * dmu + dsigma * dsigma);
  }
  const Eigen::MatrixXd root1 = matrix_sqrt(g1.covariance);
  Eigen::MatrixXd inner = root1 * g0.covariance * root1;
  inner = ((inner + inner.transpose()) / 2.0).eval();
  const Eigen::MatrixXd cross = matrix_sqrt(inner);
  const double trace_term =
      g0.covariance.trace() + g1.covariance.trace() - 2.0 * cross.trace();
  const double sq = (g1.mean - g0.mean).squaredNorm() +
                    std::max(trace_term, 0.0);
  return std::sqrt(sq);
}

double ot_cost_bruteforce(std::span<const double> x, std::span<const double> y,
                          int k) {
  require_order(k);
  if (x.size() != y.size()) {
    throw SizeError("coupling enumeration needs equal sample sizes");
  }
  const std::size_t n = x.size();
  if (n == 0) {
    throw EmptySampleError("coupling enumeration needs non-empty samples");
  }
  if (n > 8) {
    throw SizeError("coupling enumeration is capped at n = 8, got " +
                    std::to_string(n));
  }
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += cost_term(xs[i], ys[perm[i]], k);
    }
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return cost_root(best / static_cast<double>(n), k);
}

}  // namespace fairscore
