#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>

#include "fdrlab/analytics.hpp"
#include "fdrlab/cli.hpp"

namespace fdrlab::cli {

std::string format_number(double v) {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

PValueFile read_pvalues(std::istream& in) {
  PValueFile file;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    const auto first = body.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      continue;
    }
    body = body.substr(first, body.find_last_not_of(" \t\r") - first + 1);
    if (body.front() == '#') {
      continue;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc{} || ptr != body.data() + body.size()) {
      throw InputError("line " + std::to_string(line_no) + ": cannot parse p-value '" +
                       std::string(body) + "'");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InputError("line " + std::to_string(line_no) + ": p-value " + std::string(body) +
                       " outside [0,1]");
    }
    file.values.push_back(v);
    file.tokens.emplace_back(body);
  }
  if (file.values.empty()) {
    throw InputError("no p-values");
  }
  return file;
}

void write_adjust_report(const PValueFile& file, const ProcedureSpec& spec, double alpha,
                         std::ostream& out) {
  if (spec.kind == ProcedureKind::lsu_oracle) {
    throw UsageError("LSU-Oracle needs the ground truth and cannot be used on observed data");
  }
  const PValueVector p(file.values);
  const OrderedPValues ordered(p);
  RejectionResult result;
  try {
    result = apply_procedure(spec, ordered, alpha);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  out << "index\tp_value\trejected\n";
  for (std::size_t h = 0; h < p.size(); ++h) {
    out << (h + 1) << '\t' << file.tokens[h] << '\t' << (result.is_rejected(h) ? 1 : 0) << '\n';
  }
  out << "# procedure: " << (spec.label.empty() ? default_label(spec) : spec.label) << '\n';
  out << "# alpha: " << format_number(alpha) << '\n';
  out << "# m: " << p.size() << '\n';
  out << "# k: " << result.k << '\n';
  out << "# realized_threshold: " << format_number(result.realized_threshold) << '\n';
  if (result.estimator_value) {
    out << "# estimator_value: " << format_number(*result.estimator_value) << '\n';
  }
}

void write_tables(std::size_t m, double alpha, std::ostream& out, bool printed_storey) {
  if (m == 0) {
    throw UsageError("--m must be at least 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw UsageError("--alpha must lie in (0,1)");
  }
  const auto correction = printed_storey ? StoreyCorrection::printed : StoreyCorrection::exact;
  const std::size_t k0_median = std::max<std::size_t>(1, m / 2);
  const std::size_t k0_best =
      std::min(m, static_cast<std::size_t>(std::floor(alpha * static_cast<double>(m))) + 1);
  const double eta_third = 1.0 / 3.0;

  struct Row {
    std::string name;
    MaxDepQuery query;
  };
  const Row rows[] = {
      {"BR-1S-alpha", MaxDepQuery::br1s(m, alpha, alpha)},
      {"FDR09-1/2", MaxDepQuery::fdr09(m, alpha, 0.5)},
      {"FDR09-1/3", MaxDepQuery::fdr09(m, alpha, eta_third)},
      {"Storey-alpha", MaxDepQuery::storey(m, alpha, alpha)},
      {"Storey-1/2", MaxDepQuery::storey(m, alpha, 0.5)},
      {"Quant-" + std::to_string(k0_median) + "/m", MaxDepQuery::quantile(m, alpha, k0_median)},
      {"Quant-" + std::to_string(k0_best) + "/m", MaxDepQuery::quantile(m, alpha, k0_best)},
      {"BKY06-alpha", MaxDepQuery::bky06(m, alpha, alpha)},
      {"BR-2S-alpha", MaxDepQuery::br2s(m, alpha, alpha)},
  };

  out << "# FDR under maximal dependence (m identical p-values, m0 = m)\n";
  out << "# m = " << m << ", alpha = " << format_number(alpha);
  if (printed_storey) {
    out << ", storey correction (1 + 1/m)";
  }
  out << '\n';
  out << "procedure\tfdr\n";
  for (const auto& row : rows) {
    out << row.name << '\t' << format_number(maxdep_fdr(row.query, correction)) << '\n';
  }
  const auto bounds = lambda_bounds(m, alpha);
  out << "# lambda range with FDR = lambda\n";
  out << "lambda1\t" << format_number(bounds.lower) << '\n';
  out << "lambda2\t" << format_number(bounds.upper) << '\n';
}

}  // namespace fdrlab::cli
