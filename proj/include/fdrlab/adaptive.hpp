#pragma once

// One-stage adaptive threshold collections and plug-in estimators of the
// inverse proportion of true nulls.

#include <cstddef>
#include <optional>

#include "fdrlab/core.hpp"

namespace fdrlab {

/// Delta(i) = min((1 - lambda) alpha i / (m - i + 1), lambda).
ThresholdCollection br1s_thresholds(std::size_t m, double alpha, double lambda);

/// Asymptotically optimal rejection curve, t(i) = alpha i / (m - (1 - alpha) i).
/// t(m) = 1, so on its own it rejects everything; use fdr09_thresholds instead.
ThresholdCollection aorc_thresholds(std::size_t m, double alpha);

/// min(t(i), alpha i / (eta m)), the AORC capped by a scaled linear collection.
ThresholdCollection fdr09_thresholds(std::size_t m, double alpha, double eta);

// Estimators of 1/pi0. None of them is floored at 1.

/// (1 - lambda) m / (#{p_h > lambda} + 1)
double storey_estimator(const OrderedPValues& p, double lambda);
double storey_estimator(const PValueVector& p, double lambda);

/// (1 - p_(k0)) m / (m - k0 + 1). Zero when p_(k0) = 1.
double quantile_estimator(const OrderedPValues& p, std::size_t k0);
double quantile_estimator(const PValueVector& p, std::size_t k0);

/// (1 - lambda) m / (m - |R0| + 1), R0 the linear step-up at level lambda.
double bky06_estimator(const OrderedPValues& p, double lambda);
double bky06_estimator(const PValueVector& p, double lambda);

/// (1 - lambda) m / (m - |R0'| + 1), R0' the BR-1S-lambda step-up run at level lambda.
double br2s_estimator(const OrderedPValues& p, double lambda);
double br2s_estimator(const PValueVector& p, double lambda);

enum class EstimatorKind { storey, quantile, bky06, br2s };

class EstimatorSpec {
 public:
  static EstimatorSpec storey(double lambda);
  static EstimatorSpec quantile(std::size_t k0);
  static EstimatorSpec bky06(double lambda);
  static EstimatorSpec br2s(double lambda);

  [[nodiscard]] EstimatorKind kind() const noexcept { return kind_; }
  /// Set for storey, bky06 and br2s.
  [[nodiscard]] std::optional<double> lambda() const noexcept { return lambda_; }
  /// Set for quantile.
  [[nodiscard]] std::optional<std::size_t> k0() const noexcept { return k0_; }

  /// G(p). Throws if k0 exceeds the family size.
  [[nodiscard]] double evaluate(const OrderedPValues& p) const;

 private:
  EstimatorSpec(EstimatorKind kind, std::optional<double> lambda, std::optional<std::size_t> k0)
      : kind_(kind), lambda_(lambda), k0_(k0) {}

  EstimatorKind kind_;
  std::optional<double> lambda_;
  std::optional<std::size_t> k0_;
};

/// Step-up against Delta(i) = alpha beta(i) G(p) / m, G evaluated once on the
/// whole family. Records G(p) as the estimator value.
RejectionResult plug_in_step_up(const OrderedPValues& p, double alpha, const ShapeFunction& beta,
                                const EstimatorSpec& estimator);
RejectionResult plug_in_step_up(const PValueVector& p, double alpha, const ShapeFunction& beta,
                                const EstimatorSpec& estimator);
/// Adaptive linear step-up (identity shape).
RejectionResult plug_in_step_up(const OrderedPValues& p, double alpha,
                                const EstimatorSpec& estimator);
RejectionResult plug_in_step_up(const PValueVector& p, double alpha,
                                const EstimatorSpec& estimator);

/// Hoeffding bound exp(-2(m c^2 + 1)) on P(G1 < 1), with
/// c = (1 - pi0)(F(lambda) - lambda). Empty when c <= 1/m.
std::optional<double> storey_failure_bound(std::size_t m, double pi0, double lambda,
                                           double cdf_at_lambda);

}  // namespace fdrlab
