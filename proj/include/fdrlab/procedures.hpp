#pragma once

// Named procedure roster shared by the simulator and the command-line tool.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "fdrlab/core.hpp"

namespace fdrlab {

enum class ProcedureKind {
  lsu,
  lsu_oracle,
  holm,
  br1s,
  fdr09,
  storey,
  quantile,
  bky06,
  br2s,
  two_stage_fwer,  // Holm first stage, linear second stage
  two_stage_fdr,   // linear step-up first stage, F_kappa second stage
};

/// A procedure with its parameters. Unset parameters resolve against the
/// run's alpha and m: lambda = alpha, eta = 1/2, k0 = max(1, floor(m/2)),
/// kappa = 2, and (alpha0, alpha1) = (alpha/4, alpha/2) for two_stage_fdr or
/// (alpha/2, alpha/2) for two_stage_fwer.
struct ProcedureSpec {
  ProcedureKind kind = ProcedureKind::lsu;
  std::optional<double> parameter;  // lambda or eta
  std::optional<std::size_t> k0;
  std::optional<double> kappa;
  std::optional<double> alpha0;
  std::optional<double> alpha1;
  std::string label;

  [[nodiscard]] double lambda_or(double alpha) const { return parameter.value_or(alpha); }
};

/// Parses `name[:value]`, e.g. "lsu", "oracle", "storey:0.5", "storey:alpha",
/// "quant:25", "br2s", "br-dep", "br-dep-holm". Throws std::invalid_argument.
ProcedureSpec parse_procedure(std::string_view text);

/// Canonical display label, e.g. "Storey-0.5", "BR-2S-alpha", "Quant-m/2".
std::string default_label(const ProcedureSpec& spec);

/// Runs the procedure. `truth` is required for lsu_oracle only.
RejectionResult apply_procedure(const ProcedureSpec& spec, const OrderedPValues& p, double alpha,
                                const GroundTruth* truth = nullptr);

/// The threshold collection the result must be self-consistent with, rebuilt
/// from the realized estimator value where the procedure is adaptive.
ThresholdCollection audit_thresholds(const ProcedureSpec& spec, const RejectionResult& result,
                                     std::size_t m, double alpha,
                                     const GroundTruth* truth = nullptr);

}  // namespace fdrlab
