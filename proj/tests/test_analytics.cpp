#include "catch_amalgamated.hpp"

#include <cmath>
#include <vector>

#include "fdrlab/adaptive.hpp"
#include "fdrlab/analytics.hpp"
#include "fdrlab/gaussian.hpp"

using namespace fdrlab;
using Catch::Approx;

namespace {

/// Any procedure sees m copies of one uniform u and rejects all or nothing, so
/// with m0 = m the FDR is the Lebesgue measure of {u : rejected}. Midpoint rule.
template <typename Rejects>
double rejection_measure(std::size_t m, std::size_t cells, Rejects rejects) {
  std::size_t hits = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double u = (static_cast<double>(c) + 0.5) / static_cast<double>(cells);
    hits += rejects(PValueVector(std::vector<double>(m, u))) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(cells);
}

double upper_tail_inverse_by_bisection(double u) {
  double lo = -40.0;
  double hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gaussian_upper_tail(mid) > u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("maximal dependence examples", "[analytics]") {
  CHECK(maxdep_fdr(MaxDepQuery::storey(100, 0.05, 0.5)) == Approx(0.5));
  CHECK(maxdep_fdr(MaxDepQuery::fdr09(100, 0.05, 0.5)) == Approx(0.10));
  const double quant = maxdep_fdr(MaxDepQuery::quantile(100, 0.05, 50));
  CHECK(quant == Approx(0.05 / (1.05 - 0.49)));
  CHECK(quant == Approx(2 * 0.05 / (1 + 2 * 0.05 + 2.0 / 100)));
  CHECK(quant == Approx(0.08929).margin(5e-6));
  CHECK(maxdep_fdr(MaxDepQuery::br1s(100, 0.05, 0.05)) == Approx(0.05));
  CHECK(maxdep_fdr(MaxDepQuery::bky06(100, 0.05, 0.05)) == Approx(0.05));
  CHECK(maxdep_fdr(MaxDepQuery::br2s(100, 0.05, 0.05)) == Approx(0.05));

  // Small alpha m: the Storey value is alpha m / 2.
  CHECK(maxdep_fdr(MaxDepQuery::storey(10, 0.05, 0.5)) == Approx(0.25));
  // Clamped to [0,1].
  CHECK(maxdep_fdr(MaxDepQuery::fdr09(10, 0.4, 0.3)) == 1.0);

  CHECK_THROWS_AS(MaxDepQuery::storey(10, 0.05, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(MaxDepQuery::quantile(10, 0.05, 11), std::invalid_argument);
  CHECK_THROWS_AS(MaxDepQuery::fdr09(0, 0.05, 0.5), std::invalid_argument);
}

TEST_CASE("Storey correction forms", "[analytics]") {
  // The correction term is active for small lambda.
  const auto q = MaxDepQuery::storey(100, 0.05, 0.01);
  const double exact = maxdep_fdr(q);
  const double printed = maxdep_fdr(q, StoreyCorrection::printed);
  CHECK(exact == Approx(0.01 + (0.05 * 0.99 * 100.0 / 101.0 - 0.01)));
  CHECK(printed == Approx(0.01 + (0.05 * 0.99 * 1.01 - 0.01)));
  CHECK(printed > exact);
  // Same value when the correction vanishes.
  const auto inactive = MaxDepQuery::storey(100, 0.05, 0.5);
  CHECK(maxdep_fdr(inactive) == maxdep_fdr(inactive, StoreyCorrection::printed));
}

TEST_CASE("maximal dependence closed forms match direct integration", "[analytics][oracle]") {
  const std::size_t cells = 200000;
  const double tol = 5e-5;
  for (std::size_t m : {10u, 50u}) {
    for (double alpha : {0.05, 0.1}) {
      CAPTURE(m, alpha);
      for (double lambda : {0.01, alpha, 0.3, 0.5}) {
        CAPTURE(lambda);
        CHECK(rejection_measure(m, cells, [&](const PValueVector& p) {
                return step_up(p, br1s_thresholds(m, alpha, lambda)).k > 0;
              }) == Approx(maxdep_fdr(MaxDepQuery::br1s(m, alpha, lambda))).margin(tol));
        CHECK(rejection_measure(m, cells, [&](const PValueVector& p) {
                return plug_in_step_up(p, alpha, EstimatorSpec::storey(lambda)).k > 0;
              }) == Approx(maxdep_fdr(MaxDepQuery::storey(m, alpha, lambda))).margin(tol));
        CHECK(rejection_measure(m, cells, [&](const PValueVector& p) {
                return plug_in_step_up(p, alpha, EstimatorSpec::bky06(lambda)).k > 0;
              }) == Approx(maxdep_fdr(MaxDepQuery::bky06(m, alpha, lambda))).margin(tol));
        CHECK(rejection_measure(m, cells, [&](const PValueVector& p) {
                return plug_in_step_up(p, alpha, EstimatorSpec::br2s(lambda)).k > 0;
              }) == Approx(maxdep_fdr(MaxDepQuery::br2s(m, alpha, lambda))).margin(tol));
      }
      for (double eta : {0.5, 1.0 / 3.0}) {
        CHECK(rejection_measure(m, cells, [&](const PValueVector& p) {
                return step_up(p, fdr09_thresholds(m, alpha, eta)).k > 0;
              }) == Approx(maxdep_fdr(MaxDepQuery::fdr09(m, alpha, eta))).margin(tol));
      }
      for (std::size_t k0 : {std::size_t{1}, m / 2, m}) {
        CHECK(rejection_measure(m, cells, [&](const PValueVector& p) {
                return plug_in_step_up(p, alpha, EstimatorSpec::quantile(k0)).k > 0;
              }) == Approx(maxdep_fdr(MaxDepQuery::quantile(m, alpha, k0))).margin(tol));
      }
    }
  }
}

TEST_CASE("critical mean", "[analytics]") {
  const auto mu = critical_mean(0.5, 0.05);
  REQUIRE(mu.has_value());
  CHECK(*mu == Approx(1.51).margin(0.01));
  CHECK_FALSE(critical_mean(1.0 / 1.05, 0.05).has_value());
  CHECK_FALSE(critical_mean(0.99, 0.05).has_value());
  CHECK(critical_mean(1.0 / 1.05 - 1e-6, 0.05).has_value());
  CHECK_THROWS_AS(critical_mean(0.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(critical_mean(0.5, 1.0), std::invalid_argument);

  // Decreasing in alpha for moderate pi0; the direction flips near the
  // domain boundary (pi0 = 0.9 increases over the same grid).
  const std::vector<double> alphas{0.01, 0.02, 0.05, 0.08, 0.1};
  for (double pi0 : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    for (std::size_t j = 1; j < alphas.size(); ++j) {
      CHECK(*critical_mean(pi0, alphas[j]) < *critical_mean(pi0, alphas[j - 1]));
    }
  }
  for (std::size_t j = 1; j < alphas.size(); ++j) {
    CHECK(*critical_mean(0.9, alphas[j]) > *critical_mean(0.9, alphas[j - 1]));
  }
  // Increasing in pi0 at fixed alpha.
  double previous = 0.0;
  for (double pi0 = 0.05; pi0 < 0.95; pi0 += 0.05) {
    const auto v = critical_mean(pi0, 0.05);
    REQUIRE(v.has_value());
    CHECK(*v > previous);
    previous = *v;
  }
}

TEST_CASE("lambda bounds", "[analytics]") {
  const auto b = lambda_bounds(100, 0.05);
  CHECK(b.upper == Approx(0.05 / 0.06));
  CHECK(b.upper == Approx(0.8333).margin(1e-4));
  CHECK(b.lower == Approx(0.05 / 1.06));
  CHECK(b.lower == Approx(0.04717).margin(1e-5));
  CHECK(b.lower <= 0.05);
  CHECK(0.05 <= b.upper);
  CHECK(maxdep_fdr(MaxDepQuery::storey(100, 0.05, 0.05)) == Approx(0.05));

  for (std::size_t m : {1u, 2u, 10u, 100u, 10000u}) {
    for (double alpha : {0.01, 0.05, 0.2, 0.5}) {
      const auto lb = lambda_bounds(m, alpha);
      CHECK(lb.lower < lb.upper);
      for (int j = 0; j <= 20; ++j) {
        const double lambda = lb.lower + (lb.upper - lb.lower) * j / 20.0;
        if (lambda > 0.0 && lambda < 1.0) {
          CHECK(maxdep_fdr(MaxDepQuery::storey(m, alpha, lambda)) == Approx(lambda));
        }
      }
      for (int j = 1; j <= 20; ++j) {
        const double lambda = std::min(lb.upper, 0.999) * j / 20.0;
        CHECK(maxdep_fdr(MaxDepQuery::br1s(m, alpha, lambda)) == Approx(lambda));
      }
    }
  }
  CHECK_THROWS_AS(lambda_bounds(0, 0.05), std::invalid_argument);
}

TEST_CASE("binomial inverse moment", "[analytics]") {
  CHECK(lemma4_lhs_exact(2, 1.0) == Approx(0.5));
  CHECK(lemma4_lhs_exact(5, 0.3) <= 1.0 / 1.5);
  CHECK(lemma4_lhs_exact(5, 0.3) == Approx((1.0 - std::pow(0.7, 5)) / 1.5).epsilon(1e-13));
  CHECK_THROWS_AS(lemma4_lhs_exact(1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(lemma4_lhs_exact(3, 0.0), std::invalid_argument);

  for (std::size_t k = 2; k <= 200; ++k) {
    for (int j = 1; j <= 100; ++j) {
      const double q = j / 100.0;
      const double kq = static_cast<double>(k) * q;
      const double lhs = lemma4_lhs_exact(k, q);
      CHECK(lhs <= 1.0 / kq * (1 + 1e-12));
      CHECK(lhs == Approx((1.0 - std::pow(1.0 - q, static_cast<double>(k))) / kq).epsilon(1e-10));
    }
  }
}

TEST_CASE("Gaussian tail and inverse", "[analytics][gaussian]") {
  CHECK(gaussian_upper_tail(0.0) == 0.5);
  CHECK(gaussian_upper_tail(1.6448536269514722) == Approx(0.05).epsilon(1e-14));
  CHECK(gaussian_upper_tail(3.0) == Approx(0.0013498980316300933).epsilon(1e-13));
  CHECK(gaussian_upper_tail(-1.0) == Approx(0.8413447460685429).epsilon(1e-14));
  CHECK(gaussian_upper_tail(8.0) == Approx(6.22096057427174e-16).epsilon(1e-12));

  CHECK(gaussian_upper_tail_inverse(0.5) == Approx(0.0).margin(1e-15));
  CHECK(gaussian_upper_tail_inverse(1e-10) == Approx(6.361340902404056).margin(1e-10));
  CHECK(gaussian_upper_tail_inverse(1e-5) == Approx(4.264890793922825).margin(1e-10));
  CHECK(gaussian_upper_tail_inverse(0.025) == Approx(1.9599639845400545).margin(1e-10));
  CHECK(gaussian_upper_tail_inverse(0.3) == Approx(0.5244005127080409).margin(1e-10));
  CHECK(gaussian_upper_tail_inverse(0.9) == Approx(-1.2815515655446004).margin(1e-10));
  CHECK_THROWS_AS(gaussian_upper_tail_inverse(0.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_upper_tail_inverse(1.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_upper_tail_inverse(std::nan("")), std::invalid_argument);

  for (double e = -10.0; e <= -0.31; e += 0.05) {
    const double u = std::pow(10.0, e);
    CHECK(gaussian_upper_tail(gaussian_upper_tail_inverse(u)) == Approx(u).epsilon(1e-9));
    CHECK(gaussian_upper_tail_inverse(u) ==
          Approx(upper_tail_inverse_by_bisection(u)).margin(1e-10));
    const double v = 1.0 - u;
    CHECK(gaussian_upper_tail(gaussian_upper_tail_inverse(v)) == Approx(v).margin(1e-9));
    // 1 - v is exact here, and the lower half follows by symmetry.
    CHECK(gaussian_upper_tail_inverse(v) ==
          Approx(-upper_tail_inverse_by_bisection(1.0 - v)).margin(1e-10));
  }
}
