#include "fdrlab/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "fdrlab/gaussian.hpp"

namespace fdrlab {

namespace {

constexpr std::size_t kBlockSize = 64;

double mean_se(double sum, double sum_sq, std::size_t n) {
  if (n < 2) {
    return 0.0;
  }
  const double nd = static_cast<double>(n);
  const double mean = sum / nd;
  const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
  return std::sqrt(var / nd);
}

}  // namespace

std::size_t SimConfig::m0() const {
  return static_cast<std::size_t>(std::nearbyint(pi0 * static_cast<double>(m)));
}

void SimConfig::validate() const {
  if (m == 0) {
    throw std::invalid_argument("m must be at least 1");
  }
  if (!(pi0 >= 0.0 && pi0 <= 1.0)) {
    throw std::invalid_argument("pi0 must lie in [0,1]");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("rho must lie in [0,1]");
  }
  if (!(mu_bar >= 0.0) || std::isinf(mu_bar)) {
    throw std::invalid_argument("mu_bar must be finite and >= 0");
  }
  require_level(alpha, "alpha");
  if (reps == 0) {
    throw std::invalid_argument("reps must be at least 1");
  }
}

double ReplicateRng::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double ReplicateRng::normal() { return gaussian_upper_tail_inverse(uniform()); }

std::pair<PValueVector, GroundTruth> gen_equicorrelated(const SimConfig& cfg, ReplicateRng& rng) {
  const std::size_t m0 = cfg.m0();
  const double shared_scale = std::sqrt(cfg.rho);
  const double own_scale = std::sqrt(1.0 - cfg.rho);
  const double shared = rng.normal();
  std::vector<double> p(cfg.m);
  for (std::size_t i = 0; i < cfg.m; ++i) {
    const double mean = i < m0 ? 0.0 : cfg.mu_bar;
    const double x = mean + shared_scale * shared + own_scale * rng.normal();
    p[i] = gaussian_upper_tail(x);
  }
  return {PValueVector(std::move(p)), GroundTruth::nulls_first(cfg.m, m0)};
}

double ProcedureCounts::fdp() const {
  return discoveries == 0
             ? 0.0
             : static_cast<double>(false_discoveries) / static_cast<double>(discoveries);
}

double ProcedureCounts::fnp() const {
  return non_discoveries == 0 ? 0.0
                              : static_cast<double>(false_non_discoveries) /
                                    static_cast<double>(non_discoveries);
}

ProcedureCounts count_outcome(const RejectionResult& result, const GroundTruth& truth) {
  ProcedureCounts c;
  for (std::size_t h = 0; h < truth.size(); ++h) {
    const bool rejected = result.is_rejected(h);
    const bool null = truth.is_null(h);
    if (rejected) {
      ++c.discoveries;
      if (null) {
        ++c.false_discoveries;
      } else {
        ++c.true_discoveries;
      }
    } else {
      ++c.non_discoveries;
      if (!null) {
        ++c.false_non_discoveries;
      }
    }
  }
  return c;
}

namespace {

ReplicateOutcome run_ordered(const OrderedPValues& ordered, const GroundTruth& truth,
                             const std::vector<ProcedureSpec>& procedures, double alpha) {
  ReplicateOutcome outcome;
  outcome.per_procedure.reserve(procedures.size());
  for (const auto& spec : procedures) {
    outcome.per_procedure.push_back(
        count_outcome(apply_procedure(spec, ordered, alpha, &truth), truth));
  }
  return outcome;
}

}  // namespace

ReplicateOutcome run_replicate(const PValueVector& p, const GroundTruth& truth,
                               const std::vector<ProcedureSpec>& procedures, double alpha) {
  if (truth.size() != p.size()) {
    throw std::invalid_argument("ground truth length does not match the p-value family");
  }
  return run_ordered(OrderedPValues(p), truth, procedures, alpha);
}

void ProcedureSums::merge(const ProcedureSums& other) {
  fdp += other.fdp;
  fdp_sq += other.fdp_sq;
  power += other.power;
  power_sq += other.power_sq;
  fnp += other.fnp;
  fnp_sq += other.fnp_sq;
  true_disc += other.true_disc;
  true_disc_sq += other.true_disc_sq;
  true_disc_x_oracle += other.true_disc_x_oracle;
}

MetricsAccumulator::MetricsAccumulator(std::size_t procedures, std::size_t m, std::size_t m0)
    : sums_(procedures), m1_(m - m0) {}

void MetricsAccumulator::add(const ReplicateOutcome& outcome, const ProcedureCounts& oracle) {
  if (outcome.per_procedure.size() != sums_.size()) {
    throw std::invalid_argument("replicate outcome does not match the procedure roster");
  }
  const double oracle_td = static_cast<double>(oracle.true_discoveries);
  oracle_td_ += oracle_td;
  oracle_td_sq_ += oracle_td * oracle_td;
  for (std::size_t j = 0; j < sums_.size(); ++j) {
    const auto& c = outcome.per_procedure[j];
    auto& s = sums_[j];
    const double fdp = c.fdp();
    const double fnp = c.fnp();
    const double td = static_cast<double>(c.true_discoveries);
    s.fdp += fdp;
    s.fdp_sq += fdp * fdp;
    s.fnp += fnp;
    s.fnp_sq += fnp * fnp;
    if (m1_ > 0) {
      const double power = td / static_cast<double>(m1_);
      s.power += power;
      s.power_sq += power * power;
    }
    s.true_disc += td;
    s.true_disc_sq += td * td;
    s.true_disc_x_oracle += td * oracle_td;
  }
  ++reps_;
}

void MetricsAccumulator::merge(const MetricsAccumulator& other) {
  if (other.sums_.size() != sums_.size()) {
    throw std::invalid_argument("cannot merge accumulators over different rosters");
  }
  for (std::size_t j = 0; j < sums_.size(); ++j) {
    sums_[j].merge(other.sums_[j]);
  }
  oracle_td_ += other.oracle_td_;
  oracle_td_sq_ += other.oracle_td_sq_;
  reps_ += other.reps_;
}

std::vector<ProcedureMetrics> summarize(const MetricsAccumulator& acc,
                                        const std::vector<ProcedureSpec>& procedures) {
  const std::size_t n = acc.reps();
  const double nd = static_cast<double>(n);
  std::vector<ProcedureMetrics> out;
  out.reserve(procedures.size());
  const double oracle_mean = n ? acc.oracle_true_disc() / nd : 0.0;
  const double oracle_var =
      n ? acc.oracle_true_disc_sq() / nd - oracle_mean * oracle_mean : 0.0;
  for (std::size_t j = 0; j < procedures.size(); ++j) {
    const auto& s = acc.sums()[j];
    ProcedureMetrics pm;
    pm.label = procedures[j].label.empty() ? default_label(procedures[j]) : procedures[j].label;
    pm.reps = n;
    if (n == 0) {
      out.push_back(pm);
      continue;
    }
    pm.fdr = s.fdp / nd;
    pm.fdr_se = mean_se(s.fdp, s.fdp_sq, n);
    pm.fnr = s.fnp / nd;
    pm.fnr_se = mean_se(s.fnp, s.fnp_sq, n);
    pm.mean_true_discoveries = s.true_disc / nd;
    if (acc.alternatives() > 0) {
      pm.power_abs = s.power / nd;
      pm.power_abs_se = mean_se(s.power, s.power_sq, n);
    }
    if (oracle_mean > 0.0) {
      const double mean = pm.mean_true_discoveries;
      pm.power_rel = mean / oracle_mean;
      // Delta method for a ratio of paired means.
      const double var_p = s.true_disc_sq / nd - mean * mean;
      const double cov = s.true_disc_x_oracle / nd - mean * oracle_mean;
      const double var_ratio = var_p / (oracle_mean * oracle_mean) -
                               2.0 * mean * cov / std::pow(oracle_mean, 3) +
                               mean * mean * oracle_var / std::pow(oracle_mean, 4);
      pm.power_rel_se = n > 1 ? std::sqrt(std::max(0.0, var_ratio) / (nd - 1.0)) : 0.0;
    }
    out.push_back(pm);
  }
  return out;
}

namespace {

ProcedureSpec oracle_spec() {
  ProcedureSpec spec;
  spec.kind = ProcedureKind::lsu_oracle;
  spec.label = default_label(spec);
  return spec;
}

void simulate_block(const SimConfig& cfg, std::size_t first, std::size_t last,
                    MetricsAccumulator& acc) {
  const auto oracle = oracle_spec();
  for (std::size_t r = first; r < last; ++r) {
    ReplicateRng rng(cfg.seed, r);
    const auto [p, truth] = gen_equicorrelated(cfg, rng);
    const OrderedPValues ordered(p);
    const auto outcome = run_ordered(ordered, truth, cfg.procedures, cfg.alpha);
    const auto oracle_counts =
        count_outcome(apply_procedure(oracle, ordered, cfg.alpha, &truth), truth);
    acc.add(outcome, oracle_counts);
  }
}

}  // namespace

MetricsAccumulator simulate(const SimConfig& cfg, unsigned threads) {
  cfg.validate();
  const std::size_t blocks = (cfg.reps + kBlockSize - 1) / kBlockSize;
  std::vector<MetricsAccumulator> partial(
      blocks, MetricsAccumulator(cfg.procedures.size(), cfg.m, cfg.m0()));

  const auto run_block = [&](std::size_t b) {
    simulate_block(cfg, b * kBlockSize, std::min(cfg.reps, (b + 1) * kBlockSize), partial[b]);
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    for (std::size_t b = 0; b < blocks; ++b) {
      run_block(b);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t b = next++; b < blocks; b = next++) {
            run_block(b);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    for (const auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }

  MetricsAccumulator total(cfg.procedures.size(), cfg.m, cfg.m0());
  for (const auto& block : partial) {
    total.merge(block);
  }
  return total;
}

std::vector<ProcedureMetrics> monte_carlo(const SimConfig& cfg, unsigned threads) {
  return summarize(simulate(cfg, threads), cfg.procedures);
}

std::vector<ReplicateOutcome> replicate_outcomes(const SimConfig& cfg, std::size_t first,
                                                 std::size_t count) {
  cfg.validate();
  const auto oracle = oracle_spec();
  std::vector<ReplicateOutcome> out;
  out.reserve(count);
  for (std::size_t r = first; r < first + count; ++r) {
    ReplicateRng rng(cfg.seed, r);
    const auto [p, truth] = gen_equicorrelated(cfg, rng);
    const OrderedPValues ordered(p);
    auto outcome = run_ordered(ordered, truth, cfg.procedures, cfg.alpha);
    outcome.per_procedure.push_back(
        count_outcome(apply_procedure(oracle, ordered, cfg.alpha, &truth), truth));
    out.push_back(std::move(outcome));
  }
  return out;
}

}  // namespace fdrlab
