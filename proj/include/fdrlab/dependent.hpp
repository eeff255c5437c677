#pragma once

// Shape functions for arbitrary dependence and two-stage adaptive procedures
// that stay valid under positive (PRDS) or unspecified dependence.

#include <cstddef>
#include <functional>
#include <vector>

#include "fdrlab/core.hpp"

namespace fdrlab {

/// Finite discrete prior on (0, inf): positive support points with weights summing to 1.
class PriorDistribution {
 public:
  PriorDistribution(std::vector<double> support, std::vector<double> weights);

  /// nu(u) proportional to 1/u on {1..m}.
  static PriorDistribution harmonic(std::size_t m);
  static PriorDistribution uniform(std::size_t m);
  static PriorDistribution point_mass(double u0);

  [[nodiscard]] const std::vector<double>& support() const noexcept { return support_; }
  [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
  [[nodiscard]] double mean() const;

 private:
  std::vector<double> support_;
  std::vector<double> weights_;
};

/// beta(r) = sum over support points u <= r of u nu(u), on r = 0..m.
ShapeFunction shape_from_prior(const PriorDistribution& nu, std::size_t m);

/// Benjamini-Yekutieli shape beta(i) = i / (1 + 1/2 + ... + 1/m).
ShapeFunction by_shape(std::size_t m);

/// F_kappa(x): 1 for x <= 1/kappa, else 2/kappa / (1 - sqrt(1 - 4(1-x)/kappa)).
/// Returns +infinity at x = 1.
double f_kappa(double x, double kappa);

/// kappa^-1 t^-2 - t^-1 + 1, so that F_kappa(x) > t iff x > f_kappa_inverse(t).
double f_kappa_inverse(double t, double kappa);

using FirstStage = std::function<RejectionResult(const OrderedPValues&)>;

/// Second stage step-up with Delta(i) = alpha1 beta(i) / (m - |R0|), R0 a
/// FWER-controlling first stage (Holm at alpha0 when `first_stage` is empty).
/// |R0| = m rejects everything. The estimator value is m / (m - |R0|).
RejectionResult two_stage_fwer(const OrderedPValues& p, double alpha0, double alpha1,
                               const ShapeFunction& beta, const FirstStage& first_stage = {});
RejectionResult two_stage_fwer(const PValueVector& p, double alpha0, double alpha1,
                               const ShapeFunction& beta, const FirstStage& first_stage = {});

/// First stage step-up at alpha0 beta(i)/m, second stage at
/// alpha1 beta(i) F_kappa(|R0|/m) / m. Requires alpha0 <= alpha1, kappa >= 2.
RejectionResult two_stage_fdr(const OrderedPValues& p, double alpha0, double alpha1, double kappa,
                              const ShapeFunction& beta);
RejectionResult two_stage_fdr(const PValueVector& p, double alpha0, double alpha1, double kappa,
                              const ShapeFunction& beta);

}  // namespace fdrlab
