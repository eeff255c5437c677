#pragma once

// Core types of the library: p-value families, threshold collections,
// shape functions and the generic step-up / step-down engine.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace fdrlab {

/// Observed family of p-values. Entries lie in [0,1] and there is at least one.
class PValueVector {
 public:
  explicit PValueVector(std::vector<double> values);

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t h) const { return values_[h]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// Per-hypothesis truth labels. `is_null(h)` is true when H_h is a true null.
class GroundTruth {
 public:
  explicit GroundTruth(std::vector<std::uint8_t> is_null);

  /// First m0 hypotheses null, remaining m - m0 alternatives.
  static GroundTruth nulls_first(std::size_t m, std::size_t m0);

  [[nodiscard]] std::size_t size() const noexcept { return is_null_.size(); }
  [[nodiscard]] bool is_null(std::size_t h) const { return is_null_[h] != 0; }
  [[nodiscard]] std::size_t m0() const noexcept { return m0_; }
  [[nodiscard]] double pi0() const noexcept {
    return static_cast<double>(m0_) / static_cast<double>(is_null_.size());
  }

 private:
  std::vector<std::uint8_t> is_null_;
  std::size_t m0_ = 0;
};

/// Thresholds Delta(0..m), materialized. Delta(0) = 0, every value >= 0
/// (+infinity is allowed and means "always pass").
class ThresholdCollection {
 public:
  explicit ThresholdCollection(std::vector<double> values);

  static ThresholdCollection from_function(std::size_t m,
                                           const std::function<double(std::size_t)>& delta);

  [[nodiscard]] std::size_t m() const noexcept { return values_.size() - 1; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

enum class ShapeKind { identity, prior, by };

/// Normalized threshold profile beta(0..m), beta(0) = 0, non-decreasing.
class ShapeFunction {
 public:
  ShapeFunction(std::vector<double> beta, ShapeKind kind);

  static ShapeFunction identity(std::size_t m);

  [[nodiscard]] std::size_t m() const noexcept { return beta_.size() - 1; }
  [[nodiscard]] ShapeKind kind() const noexcept { return kind_; }
  [[nodiscard]] double operator()(std::size_t r) const { return beta_[r]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return beta_; }

  /// Delta(i) = alpha * beta(i) * factor / m. An infinite factor maps every
  /// i with beta(i) > 0 to +infinity.
  [[nodiscard]] ThresholdCollection thresholds(double alpha, double factor = 1.0) const;

 private:
  std::vector<double> beta_;
  ShapeKind kind_;
};

struct RejectionResult {
  std::vector<std::uint8_t> rejected;
  std::size_t k = 0;
  double realized_threshold = 0.0;
  std::optional<double> estimator_value;

  [[nodiscard]] bool is_rejected(std::size_t h) const { return rejected[h] != 0; }
};

/// Stable ascending order of the p-values (0-based indices).
std::vector<std::size_t> sort_indices(const PValueVector& p);

/// A p-value family together with its order statistics, so several procedures
/// can share one sort.
class OrderedPValues {
 public:
  explicit OrderedPValues(const PValueVector& p);
  explicit OrderedPValues(PValueVector&&) = delete;

  [[nodiscard]] std::size_t size() const noexcept { return sorted_.size(); }
  [[nodiscard]] const PValueVector& pvalues() const noexcept { return *p_; }
  /// p_(i) for i in 1..m.
  [[nodiscard]] double order_stat(std::size_t i) const { return sorted_[i - 1]; }
  [[nodiscard]] std::span<const std::size_t> order() const noexcept { return order_; }
  [[nodiscard]] std::span<const double> sorted() const noexcept { return sorted_; }

  /// Number of p-values <= t.
  [[nodiscard]] std::size_t count_at_most(double t) const;

 private:
  const PValueVector* p_;
  std::vector<std::size_t> order_;
  std::vector<double> sorted_;
};

/// Rejects the k smallest p-values, k = max{i : p_(i) <= Delta(i)}.
RejectionResult step_up(const OrderedPValues& p, const ThresholdCollection& delta);
RejectionResult step_up(const PValueVector& p, const ThresholdCollection& delta);

/// Rejects the k smallest p-values, k = max{i : p_(j) <= Delta(j) for all j <= i}.
RejectionResult step_down(const OrderedPValues& p, const ThresholdCollection& delta);
RejectionResult step_down(const PValueVector& p, const ThresholdCollection& delta);

/// Every rejected hypothesis satisfies p_h <= Delta(|R|).
bool is_self_consistent(const RejectionResult& result, const PValueVector& p,
                        const ThresholdCollection& delta);

/// Benjamini-Hochberg linear step-up, Delta(i) = alpha i / m.
RejectionResult lsu(const OrderedPValues& p, double alpha);
RejectionResult lsu(const PValueVector& p, double alpha);

/// Linear step-up with the true m0 in the denominator. m0 = 0 rejects everything.
RejectionResult lsu_oracle(const OrderedPValues& p, double alpha, const GroundTruth& truth);
RejectionResult lsu_oracle(const PValueVector& p, double alpha, const GroundTruth& truth);

/// Holm step-down, Delta(i) = alpha / (m - i + 1).
RejectionResult holm(const OrderedPValues& p, double alpha);
RejectionResult holm(const PValueVector& p, double alpha);

ThresholdCollection lsu_thresholds(std::size_t m, double alpha);
ThresholdCollection holm_thresholds(std::size_t m, double alpha);

void require_level(double alpha, const char* what);

}  // namespace fdrlab
