// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fairscore/divergence.hpp"
#include "support/oracles.hpp"

using fairscore::bin_scores;
using fairscore::BinnedDistribution;
using fairscore::BinRangeError;
using fairscore::build_ecdf;
using fairscore::DimError;
using fairscore::DomainError;
using fairscore::EdgeMismatchError;
using fairscore::GaussianParams;
using fairscore::js_divergence;
using fairscore::kl_divergence;
using fairscore::MatrixError;
using fairscore::ot_cost_bruteforce;
using fairscore::SizeError;
using fairscore::SupportError;
using fairscore::total_variation;
using fairscore::uniform_edges;
using fairscore::ValidationError;
using fairscore::wasserstein_empirical;
using fairscore::wasserstein_gaussian;

namespace {

constexpr double kLn2 = 0.6931471805599453;

BinnedDistribution two_bins(double m0, double m1) {
  return BinnedDistribution({0.0, 0.5, 1.0}, {m0, m1});
}

// Random histogram on shared unit edges; a fraction of bins may be empty.
BinnedDistribution random_hist(std::mt19937_64& rng, std::size_t bins) {
  std::vector<double> masses(bins, 0.0);
  double total = 0.0;
  for (auto& m : masses) {
    m = (rng() % 4 == 0) ? 0.0 : testsupport::uniform01(rng) + 1e-3;
    total += m;
  }
  if (total == 0.0) {
    masses[0] = 1.0;
    total = 1.0;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < bins; ++i) {
    masses[i] /= total;
    acc += masses[i];
  }
  // The residual can dip a few ulp below zero when the last draw was 0.
  masses[bins - 1] = std::max(0.0, 1.0 - acc);
  return BinnedDistribution(uniform_edges(bins, 0.0, 1.0),
                            std::move(masses));
}

}  // namespace

TEST_CASE("binned distribution validates edges and masses") {
  CHECK_THROWS_AS(BinnedDistribution({0.0}, {}), ValidationError);
  CHECK_THROWS_AS(BinnedDistribution({0.0, 0.0, 1.0}, {0.5, 0.5}),
                  ValidationError);
  CHECK_THROWS_AS(BinnedDistribution({0.0, 1.0}, {0.5, 0.5}),
                  ValidationError);
  CHECK_THROWS_AS(BinnedDistribution({0.0, 0.5, 1.0}, {-0.1, 1.1}),
                  ValidationError);
  CHECK_THROWS_AS(BinnedDistribution({0.0, 0.5, 1.0}, {0.6, 0.6}),
                  ValidationError);
  CHECK(two_bins(0.5, 0.5).bins() == 2);
}

TEST_CASE("uniform_edges spans [lo,hi] with an exact last edge") {
  const auto edges = uniform_edges(2, 0.0, 1.0);
  CHECK(edges == std::vector<double>{0.0, 0.5, 1.0});
  const auto seven = uniform_edges(7, 0.0, 1.0);
  CHECK(seven.size() == 8);
  CHECK(seven.front() == 0.0);
  CHECK(seven.back() == 1.0);
  CHECK_THROWS_AS(uniform_edges(0, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(uniform_edges(3, 1.0, 1.0), ValidationError);
}

TEST_CASE("bin_scores histograms samples, first bin closed on the left") {
  const auto h = bin_scores(build_ecdf({0.1, 0.2, 0.8}), {0.0, 0.5, 1.0});
  CHECK(h.masses == std::vector<double>{2.0 / 3.0, 1.0 / 3.0});

  // Interior edge values land in the lower bin; 0 lands in the first.
  const auto edge = bin_scores(build_ecdf({0.0, 0.5, 0.7}), {0.0, 0.5, 1.0});
  CHECK(edge.masses == std::vector<double>{2.0 / 3.0, 1.0 / 3.0});

  CHECK_THROWS_AS(bin_scores(build_ecdf({-0.1}), {0.0, 1.0}), BinRangeError);
  CHECK_THROWS_AS(bin_scores(build_ecdf({1.1}), {0.0, 1.0}), BinRangeError);
}

TEST_CASE("total variation matches the worked two-bin value") {
  const auto p = two_bins(0.5, 0.5);
  const auto q = two_bins(0.9, 0.1);
  CHECK(std::fabs(total_variation(p, q) - 0.4) <= 1e-15);
  CHECK(std::fabs(total_variation(p, q, true) - 0.4) <= 1e-15);
  CHECK(std::fabs(total_variation(q, p, true) - 0.4) <= 1e-15);
  CHECK(total_variation(p, p) == 0.0);

  const BinnedDistribution other({0.0, 0.4, 1.0}, {0.5, 0.5});
  CHECK_THROWS_AS(total_variation(p, other), EdgeMismatchError);
}

TEST_CASE("KL matches the worked value and the zero conventions") {
  const auto p = two_bins(0.5, 0.5);
  const auto q = two_bins(0.25, 0.75);
  CHECK(std::fabs(kl_divergence(p, q) - 0.14384103622589042) <= 1e-5);
  CHECK(kl_divergence(p, p) == 0.0);

  // 0*ln 0 contributes nothing on the p side.
  CHECK(std::fabs(kl_divergence(two_bins(0.0, 1.0), p) - kLn2) <= 1e-15);

  // Zero q mass under positive p mass is infinite without smoothing.
  CHECK_THROWS_AS(kl_divergence(two_bins(1.0, 0.0), two_bins(0.0, 1.0)),
                  SupportError);
  const double smoothed =
      kl_divergence(two_bins(1.0, 0.0), two_bins(0.0, 1.0), true);
  CHECK(std::fabs(smoothed - 20.72326579649988) <= 1e-6);
}

TEST_CASE("KL is asymmetric in general") {
  const auto p = two_bins(0.7, 0.3);
  const auto q = two_bins(0.4, 0.6);
  CHECK(std::fabs(kl_divergence(p, q) - kl_divergence(q, p)) > 1e-3);
}

TEST_CASE("JS matches the worked value, symmetric and bounded by ln 2") {
  const auto p = two_bins(0.5, 0.5);
  const auto q = two_bins(0.9, 0.1);
  CHECK(std::fabs(js_divergence(p, q) - 0.10174922507919676) <= 1e-5);
  CHECK(js_divergence(p, q) == js_divergence(q, p));
  CHECK(js_divergence(p, p) == 0.0);
  // Disjoint supports saturate the bound.
  CHECK(std::fabs(js_divergence(two_bins(1.0, 0.0), two_bins(0.0, 1.0)) -
                  kLn2) <= 1e-15);
}

TEST_CASE("divergence bounds hold on random histograms") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t bins = 2 + (rng() % 8);
    const auto p = random_hist(rng, bins);
    const auto q = random_hist(rng, bins);
    const double tv = total_variation(p, q);
    CHECK(tv >= 0.0);
    CHECK(tv <= 1.0 + 1e-12);
    const double js = js_divergence(p, q);
    CHECK(js >= 0.0);
    CHECK(js <= kLn2 + 1e-12);
    CHECK(kl_divergence(p, q, true) >= 0.0);
  }
}

TEST_CASE("equal-size Wasserstein uses order statistics") {
  const auto x = build_ecdf({1.0, 2.0, 3.0});
  const auto y = build_ecdf({2.0, 3.0, 4.0});
  CHECK(std::fabs(wasserstein_empirical(x, y, 1) - 1.0) <= 1e-15);
  CHECK(std::fabs(wasserstein_empirical(x, y, 2) - 1.0) <= 1e-15);
  CHECK(wasserstein_empirical(x, x, 1) == 0.0);
  CHECK(wasserstein_empirical(x, x, 2) == 0.0);
}

TEST_CASE("unequal-size Wasserstein integrates the merged quantile grid") {
  const auto x = build_ecdf({0.0, 1.0});
  const auto y = build_ecdf({0.0, 0.5, 1.0});
  const double w1 = wasserstein_empirical(x, y, 1);
  CHECK(std::fabs(w1 - 1.0 / 6.0) <= 1e-12);
  CHECK(std::fabs(w1 - testsupport::riemann_wasserstein({0.0, 1.0},
                                                        {0.0, 0.5, 1.0}, 1,
                                                        100000)) <= 1e-5);
}

TEST_CASE("Wasserstein is symmetric bitwise and zero on equal multisets") {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 50; ++rep) {
    const auto xs = testsupport::dyadic_sample(rng, 2 + (rng() % 9));
    const auto ys = testsupport::dyadic_sample(rng, 2 + (rng() % 9));
    const auto x = build_ecdf(xs);
    const auto y = build_ecdf(ys);
    for (int k = 1; k <= 2; ++k) {
      CHECK(wasserstein_empirical(x, y, k) == wasserstein_empirical(y, x, k));
      CHECK(wasserstein_empirical(x, x, k) == 0.0);
    }
  }
}

TEST_CASE("Wasserstein satisfies the triangle inequality and W2 >= W1") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 50; ++rep) {
    const auto x = build_ecdf(testsupport::dyadic_sample(rng, 3 + rep % 3));
    const auto y = build_ecdf(testsupport::dyadic_sample(rng, 4 + rep % 2));
    const auto z = build_ecdf(testsupport::dyadic_sample(rng, 5));
    for (int k = 1; k <= 2; ++k) {
      CHECK(wasserstein_empirical(x, z, k) <=
            wasserstein_empirical(x, y, k) + wasserstein_empirical(y, z, k) +
                1e-9);
    }
    CHECK(wasserstein_empirical(x, y, 2) >=
          wasserstein_empirical(x, y, 1) - 1e-12);
  }
}

TEST_CASE("Wasserstein agrees with the Riemann oracle on random pairs") {
  std::mt19937_64 rng(24);
  for (int rep = 0; rep < 10; ++rep) {
    const auto xs = testsupport::dyadic_sample(rng, 2 + (rng() % 6));
    const auto ys = testsupport::dyadic_sample(rng, 2 + (rng() % 6));
    for (int k = 1; k <= 2; ++k) {
      const double got =
          wasserstein_empirical(build_ecdf(xs), build_ecdf(ys), k);
      const double want = testsupport::riemann_wasserstein(xs, ys, k, 200000);
      CHECK(std::fabs(got - want) <= 1e-4);
    }
  }
}

TEST_CASE("Wasserstein order must be a positive integer") {
  const auto x = build_ecdf({0.1, 0.2});
  CHECK_THROWS_AS(wasserstein_empirical(x, x, 0), DomainError);
  CHECK_THROWS_AS(wasserstein_empirical(x, x, -1), DomainError);
}

TEST_CASE("Gaussian parameters validate shape and definiteness") {
  Eigen::VectorXd mu(2);
  mu << 0.0, 0.0;
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(GaussianParams(mu, asym), MatrixError);
  Eigen::MatrixXd indef(2, 2);
  indef << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(GaussianParams(mu, indef), MatrixError);
  Eigen::MatrixXd wrong(1, 1);
  wrong << 1.0;
  CHECK_THROWS_AS(GaussianParams(mu, wrong), DimError);

  const GaussianParams bi(mu, Eigen::MatrixXd::Identity(2, 2));
  CHECK_THROWS_AS(bi.sigma(), DimError);
  CHECK(GaussianParams::univariate(0.5, 4.0).sigma() == 2.0);
}

TEST_CASE("Gaussian W2 closed forms") {
  const auto g0 = GaussianParams::univariate(0.0, 1.0);
  const auto g1 = GaussianParams::univariate(1.0, 4.0);
  CHECK(std::fabs(wasserstein_gaussian(g0, g1) - std::sqrt(2.0)) <= 1e-12);
  CHECK(wasserstein_gaussian(g0, g0) == 0.0);

  Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd mu1(2);
  mu1 << 1.0, 1.0;
  const GaussianParams d0(mu0, Eigen::MatrixXd::Identity(2, 2));
  const GaussianParams d1(mu1, 4.0 * Eigen::MatrixXd::Identity(2, 2));
  CHECK(std::fabs(wasserstein_gaussian(d0, d1) - 2.0) <= 1e-10);
  CHECK(std::fabs(wasserstein_gaussian(d1, d0) -
                  wasserstein_gaussian(d0, d1)) <= 1e-12);
  CHECK(wasserstein_gaussian(d0, d0) <= 1e-7);

  CHECK_THROWS_AS(wasserstein_gaussian(g0, d0), DimError);
}

TEST_CASE("bruteforce coupling enumeration matches worked values") {
  const std::vector<double> x{1.0, 2.0, 3.0};
  const std::vector<double> y{2.0, 3.0, 4.0};
  CHECK(std::fabs(ot_cost_bruteforce(x, y, 2) - 1.0) <= 1e-15);
  const std::vector<double> a{0.0, 10.0};
  const std::vector<double> b{10.0, 0.0};
  CHECK(ot_cost_bruteforce(a, b, 1) == 0.0);

  const std::vector<double> nine(9, 0.0);
  CHECK_THROWS_AS(ot_cost_bruteforce(nine, nine, 1), SizeError);
  CHECK_THROWS_AS(ot_cost_bruteforce(x, a, 1), SizeError);
}

TEST_CASE("monotone matching equals coupling enumeration on dyadic data") {
  std::mt19937_64 rng(25);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 2 + (rng() % 5);
    const auto xs = testsupport::dyadic_sample(rng, n);
    const auto ys = testsupport::dyadic_sample(rng, n);
    for (int k = 1; k <= 2; ++k) {
      CHECK(wasserstein_empirical(build_ecdf(xs), build_ecdf(ys), k) ==
            ot_cost_bruteforce(xs, ys, k));
    }
  }
}
