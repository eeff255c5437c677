#include "fdrlab/dependent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fdrlab {

PriorDistribution::PriorDistribution(std::vector<double> support, std::vector<double> weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (support_.empty() || support_.size() != weights_.size()) {
    throw std::invalid_argument("prior needs matching, non-empty support and weights");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < support_.size(); ++j) {
    if (!(support_[j] > 0.0)) {
      throw std::invalid_argument("prior support points must be strictly positive");
    }
    if (!(weights_[j] >= 0.0)) {
      throw std::invalid_argument("prior weights must be non-negative");
    }
    total += weights_[j];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("prior weights must sum to 1");
  }
}

PriorDistribution PriorDistribution::harmonic(std::size_t m) {
  if (m == 0) {
    throw std::invalid_argument("m must be at least 1");
  }
  std::vector<double> support(m);
  std::vector<double> weights(m);
  double harmonic_sum = 0.0;
  for (std::size_t u = m; u >= 1; --u) {
    harmonic_sum += 1.0 / static_cast<double>(u);
  }
  for (std::size_t u = 1; u <= m; ++u) {
    support[u - 1] = static_cast<double>(u);
    weights[u - 1] = (1.0 / static_cast<double>(u)) / harmonic_sum;
  }
  return {std::move(support), std::move(weights)};
}

PriorDistribution PriorDistribution::uniform(std::size_t m) {
  if (m == 0) {
    throw std::invalid_argument("m must be at least 1");
  }
  std::vector<double> support(m);
  std::iota(support.begin(), support.end(), 1.0);
  return {std::move(support), std::vector<double>(m, 1.0 / static_cast<double>(m))};
}

PriorDistribution PriorDistribution::point_mass(double u0) { return {{u0}, {1.0}}; }

double PriorDistribution::mean() const {
  return std::inner_product(support_.begin(), support_.end(), weights_.begin(), 0.0);
}

ShapeFunction shape_from_prior(const PriorDistribution& nu, std::size_t m) {
  if (m == 0) {
    throw std::invalid_argument("m must be at least 1");
  }
  std::vector<std::size_t> order(nu.support().size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return nu.support()[a] < nu.support()[b]; });

  std::vector<double> beta(m + 1, 0.0);
  std::size_t next = 0;
  double partial = 0.0;
  for (std::size_t r = 1; r <= m; ++r) {
    const double rd = static_cast<double>(r);
    while (next < order.size() && nu.support()[order[next]] <= rd) {
      partial += nu.support()[order[next]] * nu.weights()[order[next]];
      ++next;
    }
    beta[r] = partial;
  }
  return ShapeFunction(std::move(beta), ShapeKind::prior);
}

ShapeFunction by_shape(std::size_t m) {
  if (m == 0) {
    throw std::invalid_argument("m must be at least 1");
  }
  double harmonic_sum = 0.0;
  for (std::size_t j = m; j >= 1; --j) {
    harmonic_sum += 1.0 / static_cast<double>(j);
  }
  std::vector<double> beta(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    beta[i] = static_cast<double>(i) / harmonic_sum;
  }
  return ShapeFunction(std::move(beta), ShapeKind::by);
}

namespace {

void require_kappa(double kappa) {
  if (!(kappa >= 2.0) || std::isinf(kappa)) {
    throw std::invalid_argument("kappa must be a finite value >= 2");
  }
}

}  // namespace

double f_kappa(double x, double kappa) {
  require_kappa(kappa);
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("F_kappa is defined on [0,1]");
  }
  if (x <= 1.0 / kappa) {
    return 1.0;
  }
  if (x == 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  // Clamp absorbs rounding near the branch point.
  const double radicand = std::clamp(1.0 - 4.0 * (1.0 - x) / kappa, 0.0, 1.0);
  return (2.0 / kappa) / (1.0 - std::sqrt(radicand));
}

double f_kappa_inverse(double t, double kappa) {
  require_kappa(kappa);
  if (!(t >= 1.0)) {
    throw std::invalid_argument("F_kappa inverse is defined for t >= 1");
  }
  return 1.0 / (kappa * t * t) - 1.0 / t + 1.0;
}

RejectionResult two_stage_fwer(const OrderedPValues& p, double alpha0, double alpha1,
                               const ShapeFunction& beta, const FirstStage& first_stage) {
  require_level(alpha0, "alpha0");
  require_level(alpha1, "alpha1");
  const std::size_t m = p.size();
  if (beta.m() != m) {
    throw std::invalid_argument("shape function size does not match the p-value family");
  }
  const auto first = first_stage ? first_stage(p) : holm(p, alpha0);
  const double factor = first.k == m ? std::numeric_limits<double>::infinity()
                                     : static_cast<double>(m) / static_cast<double>(m - first.k);
  auto result = step_up(p, beta.thresholds(alpha1, factor));
  if (first.k == m) {
    // beta may vanish on small r; the first stage already rejected everything.
    std::fill(result.rejected.begin(), result.rejected.end(), std::uint8_t{1});
    result.k = m;
    result.realized_threshold = std::numeric_limits<double>::infinity();
  }
  result.estimator_value = factor;
  return result;
}

RejectionResult two_stage_fwer(const PValueVector& p, double alpha0, double alpha1,
                               const ShapeFunction& beta, const FirstStage& first_stage) {
  return two_stage_fwer(OrderedPValues(p), alpha0, alpha1, beta, first_stage);
}

RejectionResult two_stage_fdr(const OrderedPValues& p, double alpha0, double alpha1, double kappa,
                              const ShapeFunction& beta) {
  require_level(alpha0, "alpha0");
  require_level(alpha1, "alpha1");
  require_kappa(kappa);
  if (alpha0 > alpha1) {
    throw std::invalid_argument("two-stage FDR procedure requires alpha0 <= alpha1");
  }
  const std::size_t m = p.size();
  if (beta.m() != m) {
    throw std::invalid_argument("shape function size does not match the p-value family");
  }
  const auto first = step_up(p, beta.thresholds(alpha0));
  const double factor =
      f_kappa(static_cast<double>(first.k) / static_cast<double>(m), kappa);
  auto result = step_up(p, beta.thresholds(alpha1, factor));
  result.estimator_value = factor;
  return result;
}

RejectionResult two_stage_fdr(const PValueVector& p, double alpha0, double alpha1, double kappa,
                              const ShapeFunction& beta) {
  return two_stage_fdr(OrderedPValues(p), alpha0, alpha1, kappa, beta);
}

}  // namespace fdrlab
