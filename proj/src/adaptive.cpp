#include "fdrlab/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fdrlab {

ThresholdCollection br1s_thresholds(std::size_t m, double alpha, double lambda) {
  require_level(alpha, "alpha");
  require_level(lambda, "lambda");
  return ThresholdCollection::from_function(m, [&](std::size_t i) {
    const double id = static_cast<double>(i);
    const double adaptive = (1.0 - lambda) * alpha * id / static_cast<double>(m - i + 1);
    return std::min(adaptive, lambda);
  });
}

ThresholdCollection aorc_thresholds(std::size_t m, double alpha) {
  require_level(alpha, "alpha");
  const double md = static_cast<double>(m);
  return ThresholdCollection::from_function(m, [&](std::size_t i) {
    const double id = static_cast<double>(i);
    if (i == m) {
      return 1.0;
    }
    return alpha * id / (md - (1.0 - alpha) * id);
  });
}

ThresholdCollection fdr09_thresholds(std::size_t m, double alpha, double eta) {
  require_level(eta, "eta");
  const auto aorc = aorc_thresholds(m, alpha);
  const double md = static_cast<double>(m);
  return ThresholdCollection::from_function(m, [&](std::size_t i) {
    return std::min(aorc[i], alpha * static_cast<double>(i) / (eta * md));
  });
}

double storey_estimator(const OrderedPValues& p, double lambda) {
  require_level(lambda, "lambda");
  const std::size_t m = p.size();
  const std::size_t exceed = m - p.count_at_most(lambda);
  return (1.0 - lambda) * static_cast<double>(m) / static_cast<double>(exceed + 1);
}

double storey_estimator(const PValueVector& p, double lambda) {
  return storey_estimator(OrderedPValues(p), lambda);
}

double quantile_estimator(const OrderedPValues& p, std::size_t k0) {
  const std::size_t m = p.size();
  if (k0 < 1 || k0 > m) {
    throw std::invalid_argument("k0 must lie in 1..m, got " + std::to_string(k0));
  }
  return (1.0 - p.order_stat(k0)) * static_cast<double>(m) / static_cast<double>(m - k0 + 1);
}

double quantile_estimator(const PValueVector& p, std::size_t k0) {
  return quantile_estimator(OrderedPValues(p), k0);
}

namespace {

double first_stage_ratio(std::size_t m, double lambda, std::size_t rejections) {
  return (1.0 - lambda) * static_cast<double>(m) / static_cast<double>(m - rejections + 1);
}

}  // namespace

double bky06_estimator(const OrderedPValues& p, double lambda) {
  const auto first = lsu(p, lambda);
  return first_stage_ratio(p.size(), lambda, first.k);
}

double bky06_estimator(const PValueVector& p, double lambda) {
  return bky06_estimator(OrderedPValues(p), lambda);
}

double br2s_estimator(const OrderedPValues& p, double lambda) {
  const auto first = step_up(p, br1s_thresholds(p.size(), lambda, lambda));
  return first_stage_ratio(p.size(), lambda, first.k);
}

double br2s_estimator(const PValueVector& p, double lambda) {
  return br2s_estimator(OrderedPValues(p), lambda);
}

EstimatorSpec EstimatorSpec::storey(double lambda) {
  require_level(lambda, "lambda");
  return {EstimatorKind::storey, lambda, std::nullopt};
}

EstimatorSpec EstimatorSpec::quantile(std::size_t k0) {
  if (k0 < 1) {
    throw std::invalid_argument("k0 must be at least 1");
  }
  return {EstimatorKind::quantile, std::nullopt, k0};
}

EstimatorSpec EstimatorSpec::bky06(double lambda) {
  require_level(lambda, "lambda");
  return {EstimatorKind::bky06, lambda, std::nullopt};
}

EstimatorSpec EstimatorSpec::br2s(double lambda) {
  require_level(lambda, "lambda");
  return {EstimatorKind::br2s, lambda, std::nullopt};
}

double EstimatorSpec::evaluate(const OrderedPValues& p) const {
  switch (kind_) {
    case EstimatorKind::storey:
      return storey_estimator(p, *lambda_);
    case EstimatorKind::quantile:
      return quantile_estimator(p, *k0_);
    case EstimatorKind::bky06:
      return bky06_estimator(p, *lambda_);
    case EstimatorKind::br2s:
      return br2s_estimator(p, *lambda_);
  }
  throw std::logic_error("unknown estimator kind");
}

RejectionResult plug_in_step_up(const OrderedPValues& p, double alpha, const ShapeFunction& beta,
                                const EstimatorSpec& estimator) {
  require_level(alpha, "alpha");
  if (beta.m() != p.size()) {
    throw std::invalid_argument("shape function size does not match the p-value family");
  }
  const double g = estimator.evaluate(p);
  auto result = step_up(p, beta.thresholds(alpha, g));
  result.estimator_value = g;
  return result;
}

RejectionResult plug_in_step_up(const PValueVector& p, double alpha, const ShapeFunction& beta,
                                const EstimatorSpec& estimator) {
  return plug_in_step_up(OrderedPValues(p), alpha, beta, estimator);
}

RejectionResult plug_in_step_up(const OrderedPValues& p, double alpha,
                                const EstimatorSpec& estimator) {
  return plug_in_step_up(p, alpha, ShapeFunction::identity(p.size()), estimator);
}

RejectionResult plug_in_step_up(const PValueVector& p, double alpha,
                                const EstimatorSpec& estimator) {
  return plug_in_step_up(OrderedPValues(p), alpha, estimator);
}

std::optional<double> storey_failure_bound(std::size_t m, double pi0, double lambda,
                                           double cdf_at_lambda) {
  if (m == 0) {
    throw std::invalid_argument("m must be at least 1");
  }
  if (!(pi0 >= 0.0 && pi0 <= 1.0) || !(cdf_at_lambda >= 0.0 && cdf_at_lambda <= 1.0)) {
    throw std::invalid_argument("pi0 and F(lambda) must lie in [0,1]");
  }
  require_level(lambda, "lambda");
  const double md = static_cast<double>(m);
  const double c = (1.0 - pi0) * (cdf_at_lambda - lambda);
  if (!(c > 1.0 / md)) {
    return std::nullopt;
  }
  return std::exp(-2.0 * (md * c * c + 1.0));
}

}  // namespace fdrlab
