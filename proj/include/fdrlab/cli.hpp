#pragma once

// Front-end pieces of the fdrlab tool, kept out of main() so they can be tested.

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdrlab/procedures.hpp"
#include "fdrlab/sim.hpp"

namespace fdrlab::cli {

/// Bad command-line usage or parameter combination. Exit code 1.
class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input data (grid file, p-value file). Exit code 2.
class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepVariable { pi0, mu_bar, rho };

struct ExperimentGrid {
  SweepVariable sweep = SweepVariable::pi0;
  std::vector<double> values;
  SimConfig base;  // the swept field is overwritten per cell
};

const char* sweep_name(SweepVariable v);

/// Flat key=value file: one key per line, lists comma-separated, '#' starts a
/// comment line. Required keys: sweep, values. Optional: m, pi0, rho, mu_bar,
/// alpha, reps, seed, procedures. Throws InputError naming the offending key.
ExperimentGrid parse_grid(std::istream& in);

inline constexpr const char* kCsvHeader =
    "sweep_name,sweep_value,procedure,fdr,fdr_se,power_abs,power_rel,fnr,reps,seed";

/// One row per (sweep value, procedure), in grid order.
void write_experiment_csv(const ExperimentGrid& grid, std::ostream& out, unsigned threads = 1);

struct PValueFile {
  std::vector<double> values;
  std::vector<std::string> tokens;  // as written in the file
};

/// Newline-separated p-values; blank lines and '#' lines are skipped.
/// Throws InputError with the 1-based line number of the first bad entry.
PValueFile read_pvalues(std::istream& in);

/// Tab-separated index / p-value / rejected rows, then a '#' summary block.
void write_adjust_report(const PValueFile& file, const ProcedureSpec& spec, double alpha,
                         std::ostream& out);

/// Closed-form maximal-dependence FDR values and lambda bounds for (m, alpha).
void write_tables(std::size_t m, double alpha, std::ostream& out, bool printed_storey = false);

/// printf("%.6g").
std::string format_number(double v);

}  // namespace fdrlab::cli
