#include "fdrlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fdrlab {

void require_level(double alpha, const char* what) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in (0,1), got " +
                                std::to_string(alpha));
  }
}

PValueVector::PValueVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("p-value family must contain at least one value");
  }
  for (std::size_t h = 0; h < values_.size(); ++h) {
    const double v = values_[h];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("p-value at index " + std::to_string(h) +
                                  " outside [0,1]: " + std::to_string(v));
    }
  }
}

GroundTruth::GroundTruth(std::vector<std::uint8_t> is_null) : is_null_(std::move(is_null)) {
  if (is_null_.empty()) {
    throw std::invalid_argument("ground truth must cover at least one hypothesis");
  }
  m0_ = static_cast<std::size_t>(std::count_if(is_null_.begin(), is_null_.end(),
                                               [](std::uint8_t b) { return b != 0; }));
}

GroundTruth GroundTruth::nulls_first(std::size_t m, std::size_t m0) {
  if (m0 > m) {
    throw std::invalid_argument("m0 exceeds m");
  }
  std::vector<std::uint8_t> flags(m, 0);
  std::fill_n(flags.begin(), m0, std::uint8_t{1});
  return GroundTruth(std::move(flags));
}

ThresholdCollection::ThresholdCollection(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw std::invalid_argument("threshold collection needs entries for i = 0..m with m >= 1");
  }
  if (values_[0] != 0.0) {
    throw std::invalid_argument("threshold collection must satisfy Delta(0) = 0");
  }
  for (double v : values_) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("threshold collection values must be >= 0");
    }
  }
}

ThresholdCollection ThresholdCollection::from_function(
    std::size_t m, const std::function<double(std::size_t)>& delta) {
  std::vector<double> values(m + 1, 0.0);
  for (std::size_t i = 1; i <= m; ++i) {
    values[i] = delta(i);
  }
  return ThresholdCollection(std::move(values));
}

ShapeFunction::ShapeFunction(std::vector<double> beta, ShapeKind kind)
    : beta_(std::move(beta)), kind_(kind) {
  if (beta_.size() < 2) {
    throw std::invalid_argument("shape function needs entries for r = 0..m with m >= 1");
  }
  if (beta_[0] != 0.0) {
    throw std::invalid_argument("shape function must satisfy beta(0) = 0");
  }
  for (std::size_t r = 1; r < beta_.size(); ++r) {
    if (!(beta_[r] >= beta_[r - 1])) {
      throw std::invalid_argument("shape function must be non-decreasing");
    }
  }
}

ShapeFunction ShapeFunction::identity(std::size_t m) {
  std::vector<double> beta(m + 1);
  std::iota(beta.begin(), beta.end(), 0.0);
  return ShapeFunction(std::move(beta), ShapeKind::identity);
}

ThresholdCollection ShapeFunction::thresholds(double alpha, double factor) const {
  const std::size_t m = this->m();
  const double md = static_cast<double>(m);
  std::vector<double> values(m + 1, 0.0);
  if (std::isinf(factor)) {
    for (std::size_t i = 1; i <= m; ++i) {
      values[i] = beta_[i] > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
  } else {
    for (std::size_t i = 1; i <= m; ++i) {
      values[i] = alpha * beta_[i] * factor / md;
    }
  }
  return ThresholdCollection(std::move(values));
}

std::vector<std::size_t> sort_indices(const PValueVector& p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto values = p.values();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

OrderedPValues::OrderedPValues(const PValueVector& p) : p_(&p), order_(sort_indices(p)) {
  sorted_.reserve(order_.size());
  for (std::size_t h : order_) {
    sorted_.push_back(p[h]);
  }
}

std::size_t OrderedPValues::count_at_most(double t) const {
  return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), t) -
                                  sorted_.begin());
}

namespace {

void require_matching(const OrderedPValues& p, const ThresholdCollection& delta) {
  if (delta.m() != p.size()) {
    throw std::invalid_argument("threshold collection built for m = " +
                                std::to_string(delta.m()) + " applied to " +
                                std::to_string(p.size()) + " p-values");
  }
}

RejectionResult reject_smallest(const OrderedPValues& p, const ThresholdCollection& delta,
                                std::size_t k) {
  RejectionResult result;
  result.rejected.assign(p.size(), 0);
  result.k = k;
  result.realized_threshold = delta[k];
  const auto order = p.order();
  for (std::size_t i = 0; i < k; ++i) {
    result.rejected[order[i]] = 1;
  }
  return result;
}

}  // namespace

RejectionResult step_up(const OrderedPValues& p, const ThresholdCollection& delta) {
  require_matching(p, delta);
  std::size_t k = p.size();
  while (k > 0 && !(p.order_stat(k) <= delta[k])) {
    --k;
  }
  return reject_smallest(p, delta, k);
}

RejectionResult step_up(const PValueVector& p, const ThresholdCollection& delta) {
  return step_up(OrderedPValues(p), delta);
}

RejectionResult step_down(const OrderedPValues& p, const ThresholdCollection& delta) {
  require_matching(p, delta);
  std::size_t k = 0;
  while (k < p.size() && p.order_stat(k + 1) <= delta[k + 1]) {
    ++k;
  }
  return reject_smallest(p, delta, k);
}

RejectionResult step_down(const PValueVector& p, const ThresholdCollection& delta) {
  return step_down(OrderedPValues(p), delta);
}

bool is_self_consistent(const RejectionResult& result, const PValueVector& p,
                        const ThresholdCollection& delta) {
  if (result.rejected.size() != p.size() || delta.m() != p.size() || result.k > p.size()) {
    return false;
  }
  const double bound = delta[result.k];
  std::size_t count = 0;
  for (std::size_t h = 0; h < p.size(); ++h) {
    if (result.is_rejected(h)) {
      ++count;
      if (!(p[h] <= bound)) {
        return false;
      }
    }
  }
  return count == result.k;
}

ThresholdCollection lsu_thresholds(std::size_t m, double alpha) {
  const double md = static_cast<double>(m);
  return ThresholdCollection::from_function(
      m, [&](std::size_t i) { return alpha * static_cast<double>(i) / md; });
}

ThresholdCollection holm_thresholds(std::size_t m, double alpha) {
  return ThresholdCollection::from_function(
      m, [&](std::size_t i) { return alpha / static_cast<double>(m - i + 1); });
}

RejectionResult lsu(const OrderedPValues& p, double alpha) {
  require_level(alpha, "alpha");
  return step_up(p, lsu_thresholds(p.size(), alpha));
}

RejectionResult lsu(const PValueVector& p, double alpha) { return lsu(OrderedPValues(p), alpha); }

RejectionResult lsu_oracle(const OrderedPValues& p, double alpha, const GroundTruth& truth) {
  require_level(alpha, "alpha");
  if (truth.size() != p.size()) {
    throw std::invalid_argument("ground truth length does not match the p-value family");
  }
  const std::size_t m = p.size();
  if (truth.m0() == 0) {
    return step_up(p, ThresholdCollection::from_function(m, [](std::size_t) {
                     return std::numeric_limits<double>::infinity();
                   }));
  }
  const double m0 = static_cast<double>(truth.m0());
  return step_up(p, ThresholdCollection::from_function(
                        m, [&](std::size_t i) { return alpha * static_cast<double>(i) / m0; }));
}

RejectionResult lsu_oracle(const PValueVector& p, double alpha, const GroundTruth& truth) {
  return lsu_oracle(OrderedPValues(p), alpha, truth);
}

RejectionResult holm(const OrderedPValues& p, double alpha) {
  require_level(alpha, "alpha");
  return step_down(p, holm_thresholds(p.size(), alpha));
}

RejectionResult holm(const PValueVector& p, double alpha) { return holm(OrderedPValues(p), alpha); }

}  // namespace fdrlab
