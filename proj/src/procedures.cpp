#include "fdrlab/procedures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fdrlab/adaptive.hpp"
#include "fdrlab/dependent.hpp"

namespace fdrlab {

namespace {

struct NamedKind {
  std::string_view name;
  ProcedureKind kind;
};

constexpr NamedKind kNames[] = {
    {"lsu", ProcedureKind::lsu},
    {"bh", ProcedureKind::lsu},
    {"oracle", ProcedureKind::lsu_oracle},
    {"lsu-oracle", ProcedureKind::lsu_oracle},
    {"holm", ProcedureKind::holm},
    {"br1s", ProcedureKind::br1s},
    {"br-1s", ProcedureKind::br1s},
    {"fdr09", ProcedureKind::fdr09},
    {"storey", ProcedureKind::storey},
    {"quant", ProcedureKind::quantile},
    {"median-lsu", ProcedureKind::quantile},
    {"bky06", ProcedureKind::bky06},
    {"br2s", ProcedureKind::br2s},
    {"br-2s", ProcedureKind::br2s},
    {"br-dep-holm", ProcedureKind::two_stage_fwer},
    {"br-dep", ProcedureKind::two_stage_fdr},
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return out;
}

std::string format_value(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double parse_double(std::string_view s, std::string_view context) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("invalid numeric parameter '" + std::string(s) + "' in '" +
                                std::string(context) + "'");
  }
  return value;
}

bool takes_lambda(ProcedureKind kind) {
  return kind == ProcedureKind::br1s || kind == ProcedureKind::storey ||
         kind == ProcedureKind::bky06 || kind == ProcedureKind::br2s;
}

ThresholdCollection oracle_thresholds(std::size_t m, double alpha, const GroundTruth& truth) {
  if (truth.m0() == 0) {
    return ThresholdCollection::from_function(
        m, [](std::size_t) { return std::numeric_limits<double>::infinity(); });
  }
  const double m0 = static_cast<double>(truth.m0());
  return ThresholdCollection::from_function(
      m, [&](std::size_t i) { return alpha * static_cast<double>(i) / m0; });
}

double alpha0_of(const ProcedureSpec& spec, double alpha) {
  if (spec.alpha0) {
    return *spec.alpha0;
  }
  return spec.kind == ProcedureKind::two_stage_fdr ? alpha / 4.0 : alpha / 2.0;
}

double alpha1_of(const ProcedureSpec& spec, double alpha) {
  return spec.alpha1.value_or(alpha / 2.0);
}

std::size_t k0_of(const ProcedureSpec& spec, std::size_t m) {
  return spec.k0.value_or(std::max<std::size_t>(1, m / 2));
}

}  // namespace

std::string default_label(const ProcedureSpec& spec) {
  const auto lam = [&](std::string_view prefix) {
    return std::string(prefix) + (spec.parameter ? format_value(*spec.parameter) : "alpha");
  };
  switch (spec.kind) {
    case ProcedureKind::lsu:
      return "LSU";
    case ProcedureKind::lsu_oracle:
      return "LSU-Oracle";
    case ProcedureKind::holm:
      return "Holm";
    case ProcedureKind::br1s:
      return lam("BR-1S-");
    case ProcedureKind::fdr09:
      return "FDR09-" + format_value(spec.parameter.value_or(0.5));
    case ProcedureKind::storey:
      return lam("Storey-");
    case ProcedureKind::quantile:
      return spec.k0 ? "Quant-" + std::to_string(*spec.k0) : std::string("Quant-m/2");
    case ProcedureKind::bky06:
      return lam("BKY06-");
    case ProcedureKind::br2s:
      return lam("BR-2S-");
    case ProcedureKind::two_stage_fwer:
      return "BR-dep-Holm";
    case ProcedureKind::two_stage_fdr:
      return "BR-dep";
  }
  return "unknown";
}

ProcedureSpec parse_procedure(std::string_view text) {
  const auto colon = text.find(':');
  const std::string name = lower(text.substr(0, colon));
  ProcedureSpec spec;
  bool found = false;
  for (const auto& entry : kNames) {
    if (entry.name == name) {
      spec.kind = entry.kind;
      found = true;
      break;
    }
  }
  if (!found) {
    throw std::invalid_argument("unknown procedure '" + std::string(text) + "'");
  }
  if (colon != std::string_view::npos) {
    const auto arg = text.substr(colon + 1);
    if (spec.kind == ProcedureKind::quantile) {
      const double k0 = parse_double(arg, text);
      if (!(k0 >= 1.0) || k0 != std::floor(k0)) {
        throw std::invalid_argument("quantile index must be a positive integer in '" +
                                    std::string(text) + "'");
      }
      spec.k0 = static_cast<std::size_t>(k0);
    } else if (takes_lambda(spec.kind) || spec.kind == ProcedureKind::fdr09) {
      if (lower(arg) != "alpha") {
        const double v = parse_double(arg, text);
        require_level(v, spec.kind == ProcedureKind::fdr09 ? "eta" : "lambda");
        spec.parameter = v;
      } else if (spec.kind == ProcedureKind::fdr09) {
        throw std::invalid_argument("fdr09 needs a numeric eta");
      }
    } else {
      throw std::invalid_argument("procedure '" + name + "' takes no parameter");
    }
  }
  spec.label = default_label(spec);
  return spec;
}

RejectionResult apply_procedure(const ProcedureSpec& spec, const OrderedPValues& p, double alpha,
                                const GroundTruth* truth) {
  const std::size_t m = p.size();
  switch (spec.kind) {
    case ProcedureKind::lsu:
      return lsu(p, alpha);
    case ProcedureKind::lsu_oracle:
      if (truth == nullptr) {
        throw std::invalid_argument("LSU-Oracle needs the ground truth");
      }
      return lsu_oracle(p, alpha, *truth);
    case ProcedureKind::holm:
      return holm(p, alpha);
    case ProcedureKind::br1s:
      return step_up(p, br1s_thresholds(m, alpha, spec.lambda_or(alpha)));
    case ProcedureKind::fdr09:
      return step_up(p, fdr09_thresholds(m, alpha, spec.parameter.value_or(0.5)));
    case ProcedureKind::storey:
      return plug_in_step_up(p, alpha, EstimatorSpec::storey(spec.lambda_or(alpha)));
    case ProcedureKind::quantile:
      return plug_in_step_up(p, alpha, EstimatorSpec::quantile(k0_of(spec, m)));
    case ProcedureKind::bky06:
      return plug_in_step_up(p, alpha, EstimatorSpec::bky06(spec.lambda_or(alpha)));
    case ProcedureKind::br2s:
      return plug_in_step_up(p, alpha, EstimatorSpec::br2s(spec.lambda_or(alpha)));
    case ProcedureKind::two_stage_fwer: {
      const double a0 = alpha0_of(spec, alpha);
      return two_stage_fwer(p, a0, alpha1_of(spec, alpha), ShapeFunction::identity(m),
                            [a0](const OrderedPValues& q) { return holm(q, a0); });
    }
    case ProcedureKind::two_stage_fdr:
      return two_stage_fdr(p, alpha0_of(spec, alpha), alpha1_of(spec, alpha),
                           spec.kappa.value_or(2.0), ShapeFunction::identity(m));
  }
  throw std::logic_error("unknown procedure kind");
}

ThresholdCollection audit_thresholds(const ProcedureSpec& spec, const RejectionResult& result,
                                     std::size_t m, double alpha, const GroundTruth* truth) {
  const auto identity = ShapeFunction::identity(m);
  switch (spec.kind) {
    case ProcedureKind::lsu:
      return lsu_thresholds(m, alpha);
    case ProcedureKind::lsu_oracle:
      if (truth == nullptr) {
        throw std::invalid_argument("LSU-Oracle needs the ground truth");
      }
      return oracle_thresholds(m, alpha, *truth);
    case ProcedureKind::holm:
      return holm_thresholds(m, alpha);
    case ProcedureKind::br1s:
      return br1s_thresholds(m, alpha, spec.lambda_or(alpha));
    case ProcedureKind::fdr09:
      return fdr09_thresholds(m, alpha, spec.parameter.value_or(0.5));
    case ProcedureKind::storey:
    case ProcedureKind::quantile:
    case ProcedureKind::bky06:
    case ProcedureKind::br2s:
      return identity.thresholds(alpha, result.estimator_value.value_or(1.0));
    case ProcedureKind::two_stage_fwer:
    case ProcedureKind::two_stage_fdr:
      return identity.thresholds(alpha1_of(spec, alpha), result.estimator_value.value_or(1.0));
  }
  throw std::logic_error("unknown procedure kind");
}

}  // namespace fdrlab
