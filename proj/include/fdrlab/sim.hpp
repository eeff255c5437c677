#pragma once

// Monte Carlo harness for the equicorrelated one-sided Gaussian model:
//   X_i = mu_i + sqrt(rho) U + sqrt(1 - rho) Z_i,  p_i = Phi_bar(X_i),
// with mu_i = 0 for the first m0 hypotheses and mu_bar for the rest.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fdrlab/core.hpp"
#include "fdrlab/procedures.hpp"

namespace fdrlab {

struct SimConfig {
  std::size_t m = 100;
  double pi0 = 0.5;
  double rho = 0.0;
  double mu_bar = 3.0;
  double alpha = 0.05;
  std::size_t reps = 10000;
  std::uint64_t seed = 1;
  std::vector<ProcedureSpec> procedures;

  /// round(pi0 * m), ties to even.
  [[nodiscard]] std::size_t m0() const;
  /// Throws std::invalid_argument on out-of-domain fields.
  void validate() const;
};

/// Deterministic per-replicate random stream; replicate r of a run seeded
/// with s draws from the key s XOR r.
class ReplicateRng {
 public:
  ReplicateRng(std::uint64_t seed, std::uint64_t replicate) : engine_(seed ^ replicate) {}

  /// Uniform on the open interval (0,1), 53-bit resolution.
  double uniform();
  /// Standard normal by inversion of the Gaussian tail.
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// One draw of the model.
std::pair<PValueVector, GroundTruth> gen_equicorrelated(const SimConfig& cfg, ReplicateRng& rng);

struct ProcedureCounts {
  std::size_t false_discoveries = 0;
  std::size_t discoveries = 0;
  std::size_t true_discoveries = 0;
  std::size_t non_discoveries = 0;
  std::size_t false_non_discoveries = 0;

  [[nodiscard]] double fdp() const;
  [[nodiscard]] double fnp() const;
};

ProcedureCounts count_outcome(const RejectionResult& result, const GroundTruth& truth);

struct ReplicateOutcome {
  std::vector<ProcedureCounts> per_procedure;
};

ReplicateOutcome run_replicate(const PValueVector& p, const GroundTruth& truth,
                               const std::vector<ProcedureSpec>& procedures, double alpha);

/// Running sums for one procedure; moments kept for standard errors.
struct ProcedureSums {
  double fdp = 0.0;
  double fdp_sq = 0.0;
  double power = 0.0;
  double power_sq = 0.0;
  double fnp = 0.0;
  double fnp_sq = 0.0;
  double true_disc = 0.0;
  double true_disc_sq = 0.0;
  double true_disc_x_oracle = 0.0;

  void merge(const ProcedureSums& other);
};

class MetricsAccumulator {
 public:
  MetricsAccumulator(std::size_t procedures, std::size_t m, std::size_t m0);

  void add(const ReplicateOutcome& outcome, const ProcedureCounts& oracle);
  void merge(const MetricsAccumulator& other);

  [[nodiscard]] std::size_t reps() const noexcept { return reps_; }
  [[nodiscard]] std::size_t alternatives() const noexcept { return m1_; }
  [[nodiscard]] const std::vector<ProcedureSums>& sums() const noexcept { return sums_; }
  [[nodiscard]] double oracle_true_disc() const noexcept { return oracle_td_; }
  [[nodiscard]] double oracle_true_disc_sq() const noexcept { return oracle_td_sq_; }

 private:
  std::vector<ProcedureSums> sums_;
  double oracle_td_ = 0.0;
  double oracle_td_sq_ = 0.0;
  std::size_t m1_;
  std::size_t reps_ = 0;
};

struct ProcedureMetrics {
  std::string label;
  double fdr = 0.0;
  double fdr_se = 0.0;
  /// Empty when there are no false nulls.
  std::optional<double> power_abs;
  std::optional<double> power_abs_se;
  /// Ratio of mean true discoveries to the oracle's; empty when undefined.
  std::optional<double> power_rel;
  std::optional<double> power_rel_se;
  double fnr = 0.0;
  double fnr_se = 0.0;
  double mean_true_discoveries = 0.0;
  std::size_t reps = 0;
};

std::vector<ProcedureMetrics> summarize(const MetricsAccumulator& acc,
                                        const std::vector<ProcedureSpec>& procedures);

/// Deterministic in (cfg, seed): replicates are grouped in fixed-size blocks
/// reduced in index order, so the worker count never changes the result.
std::vector<ProcedureMetrics> monte_carlo(const SimConfig& cfg, unsigned threads = 1);

/// The raw accumulator behind monte_carlo.
MetricsAccumulator simulate(const SimConfig& cfg, unsigned threads = 1);

/// Per-replicate outcomes for replicates [first, first + count), with the
/// oracle's counts appended as the last entry of each outcome.
std::vector<ReplicateOutcome> replicate_outcomes(const SimConfig& cfg, std::size_t first,
                                                 std::size_t count);

}  // namespace fdrlab
