#include "fdrlab/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fdrlab/core.hpp"
#include "fdrlab/gaussian.hpp"

namespace fdrlab {

namespace {

MaxDepQuery make_query(MaxDepProcedure proc, std::size_t m, double alpha, double parameter,
                       std::size_t k0) {
  if (m == 0) {
    throw std::invalid_argument("m must be at least 1");
  }
  require_level(alpha, "alpha");
  if (proc == MaxDepProcedure::quantile) {
    if (k0 < 1 || k0 > m) {
      throw std::invalid_argument("k0 must lie in 1..m");
    }
  } else {
    require_level(parameter, proc == MaxDepProcedure::fdr09 ? "eta" : "lambda");
  }
  return MaxDepQuery{proc, parameter, k0, m, alpha};
}

double positive_part(double x) { return std::max(x, 0.0); }

}  // namespace

MaxDepQuery MaxDepQuery::br1s(std::size_t m, double alpha, double lambda) {
  return make_query(MaxDepProcedure::br1s, m, alpha, lambda, 0);
}
MaxDepQuery MaxDepQuery::fdr09(std::size_t m, double alpha, double eta) {
  return make_query(MaxDepProcedure::fdr09, m, alpha, eta, 0);
}
MaxDepQuery MaxDepQuery::storey(std::size_t m, double alpha, double lambda) {
  return make_query(MaxDepProcedure::storey, m, alpha, lambda, 0);
}
MaxDepQuery MaxDepQuery::quantile(std::size_t m, double alpha, std::size_t k0) {
  return make_query(MaxDepProcedure::quantile, m, alpha, 0.0, k0);
}
MaxDepQuery MaxDepQuery::bky06(std::size_t m, double alpha, double lambda) {
  return make_query(MaxDepProcedure::bky06, m, alpha, lambda, 0);
}
MaxDepQuery MaxDepQuery::br2s(std::size_t m, double alpha, double lambda) {
  return make_query(MaxDepProcedure::br2s, m, alpha, lambda, 0);
}

double maxdep_fdr(const MaxDepQuery& q, StoreyCorrection correction) {
  const double md = static_cast<double>(q.m);
  const double alpha = q.alpha;
  double value = 0.0;
  switch (q.procedure) {
    case MaxDepProcedure::br1s: {
      const double lambda = q.parameter;
      value = std::min(lambda, (1.0 - lambda) * alpha * md);
      break;
    }
    case MaxDepProcedure::fdr09:
      value = alpha / q.parameter;
      break;
    case MaxDepProcedure::storey:
    case MaxDepProcedure::bky06:
    case MaxDepProcedure::br2s: {
      const double lambda = q.parameter;
      const double c = correction == StoreyCorrection::exact ? md / (md + 1.0) : 1.0 + 1.0 / md;
      value = std::min(lambda, alpha * (1.0 - lambda) * md) +
              positive_part(alpha * (1.0 - lambda) * c - lambda);
      break;
    }
    case MaxDepProcedure::quantile:
      value = alpha / ((1.0 + alpha) - static_cast<double>(q.k0 - 1) / md);
      break;
  }
  return std::clamp(value, 0.0, 1.0);
}

std::optional<double> critical_mean(double pi0, double alpha) {
  require_level(pi0, "pi0");
  require_level(alpha, "alpha");
  if (!(pi0 < 1.0 / (1.0 + alpha))) {
    return std::nullopt;
  }
  const double inner = (1.0 / alpha - pi0) / (1.0 - pi0) * alpha * alpha;
  if (!(inner > 0.0 && inner < 1.0)) {
    return std::nullopt;
  }
  return gaussian_upper_tail_inverse(alpha * alpha) - gaussian_upper_tail_inverse(inner);
}

LambdaBounds lambda_bounds(std::size_t m, double alpha) {
  if (m == 0) {
    throw std::invalid_argument("m must be at least 1");
  }
  require_level(alpha, "alpha");
  const double inv_m = 1.0 / static_cast<double>(m);
  return {alpha / (1.0 + alpha + inv_m), alpha / (alpha + inv_m)};
}

double lemma4_lhs_exact(std::size_t k, double q) {
  if (k < 2) {
    throw std::invalid_argument("k must be at least 2");
  }
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("q must lie in (0,1]");
  }
  const std::size_t n = k - 1;
  if (q == 1.0) {
    return 1.0 / static_cast<double>(k);
  }
  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  double sum = 0.0;
  for (std::size_t y = 0; y <= n; ++y) {
    const double yd = static_cast<double>(y);
    const double log_pmf = log_n_fact - std::lgamma(yd + 1.0) -
                           std::lgamma(static_cast<double>(n - y) + 1.0) + yd * log_q +
                           static_cast<double>(n - y) * log_1mq;
    sum += std::exp(log_pmf) / (1.0 + yd);
  }
  return sum;
}

}  // namespace fdrlab
