// fdrlab: adaptive FDR procedures, Monte Carlo experiments and closed-form tables.
//
//   fdrlab experiment <spec-file> [--out file.csv] [--reps N] [--seed S] [--threads T]
//   fdrlab adjust <pvals.txt> --proc <name> [--alpha A] [--lambda L] [--k0 K] [--eta E]
//                 [--kappa K] [--alpha0 A0] [--alpha1 A1]
//   fdrlab tables --m M --alpha A
//
// Exit codes: 0 success, 1 usage error, 2 input-data error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fdrlab/cli.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kInputError = 2;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw fdrlab::cli::InputError("cannot open '" + path + "'");
  }
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive false discovery rate procedures and simulation study"};
  app.require_subcommand(1);

  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo grid, write CSV");
  std::string spec_path;
  std::string out_path;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  experiment->add_option("spec", spec_path, "Grid spec file (key=value lines)")->required();
  experiment->add_option("--out", out_path, "Write CSV here instead of standard output");
  experiment->add_option("--reps", reps, "Override the replicate count");
  experiment->add_option("--seed", seed, "Override the seed");
  experiment->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* adjust = app.add_subcommand("adjust", "Apply a procedure to a file of p-values");
  std::string pvalue_path;
  std::string proc_name;
  double alpha = 0.05;
  std::optional<double> lambda;
  std::optional<std::size_t> k0;
  std::optional<double> eta;
  std::optional<double> kappa;
  std::optional<double> alpha0;
  std::optional<double> alpha1;
  adjust->add_option("pvalues", pvalue_path, "Newline-separated p-values")->required();
  adjust->add_option("--proc", proc_name, "Procedure name, e.g. lsu, storey, br2s, br-dep")
      ->required();
  adjust->add_option("--alpha", alpha, "Target level");
  adjust->add_option("--lambda", lambda, "lambda for br1s, storey, bky06, br2s");
  adjust->add_option("--k0", k0, "Quantile index for quant");
  adjust->add_option("--eta", eta, "eta for fdr09");
  adjust->add_option("--kappa", kappa, "kappa for br-dep");
  adjust->add_option("--alpha0", alpha0, "First-stage level for br-dep / br-dep-holm");
  adjust->add_option("--alpha1", alpha1, "Second-stage level for br-dep / br-dep-holm");

  auto* tables = app.add_subcommand("tables", "Closed-form FDR under maximal dependence");
  std::size_t table_m = 0;
  double table_alpha = 0.05;
  bool printed_storey = false;
  tables->add_option("--m", table_m, "Number of hypotheses")->required();
  tables->add_option("--alpha", table_alpha, "Target level")->required();
  tables->add_flag("--printed-storey", printed_storey,
                   "Use the (1 + 1/m) factor in the Storey correction term");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*experiment) {
      auto in = open_input(spec_path);
      auto grid = fdrlab::cli::parse_grid(in);
      if (reps) {
        if (*reps == 0) {
          throw fdrlab::cli::UsageError("--reps must be at least 1");
        }
        grid.base.reps = *reps;
      }
      if (seed) {
        grid.base.seed = *seed;
      }
      if (out_path.empty()) {
        fdrlab::cli::write_experiment_csv(grid, std::cout, threads);
      } else {
        std::ostringstream buffer;
        fdrlab::cli::write_experiment_csv(grid, buffer, threads);
        std::ofstream out(out_path);
        if (!out) {
          throw fdrlab::cli::UsageError("cannot write '" + out_path + "'");
        }
        out << buffer.str();
      }
    } else if (*adjust) {
      fdrlab::ProcedureSpec spec;
      try {
        spec = fdrlab::parse_procedure(proc_name);
        if (lambda) {
          spec.parameter = *lambda;
        }
        if (eta) {
          spec.parameter = *eta;
        }
        if (k0) {
          spec.k0 = *k0;
        }
        spec.kappa = kappa;
        spec.alpha0 = alpha0;
        spec.alpha1 = alpha1;
        spec.label = fdrlab::default_label(spec);
      } catch (const std::invalid_argument& e) {
        throw fdrlab::cli::UsageError(e.what());
      }
      auto in = open_input(pvalue_path);
      const auto file = fdrlab::cli::read_pvalues(in);
      fdrlab::cli::write_adjust_report(file, spec, alpha, std::cout);
    } else if (*tables) {
      fdrlab::cli::write_tables(table_m, table_alpha, std::cout, printed_storey);
    }
  } catch (const fdrlab::cli::InputError& e) {
    std::cerr << "fdrlab: " << e.what() << '\n';
    return kInputError;
  } catch (const fdrlab::cli::UsageError& e) {
    std::cerr << "fdrlab: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fdrlab: " << e.what() << '\n';
    return kUsageError;
  }
  return 0;
}
