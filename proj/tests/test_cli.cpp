#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fdrlab/cli.hpp"

using namespace fdrlab;
using namespace fdrlab::cli;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentGrid grid_from(const std::string& text) {
  std::istringstream in(text);
  return parse_grid(in);
}

std::string error_of_grid(const std::string& text) {
  try {
    grid_from(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    lines.push_back(line);
  }
  return lines;
}

std::string adjust_text(const std::string& input, const std::string& proc, double alpha) {
  std::istringstream in(input);
  std::ostringstream out;
  write_adjust_report(read_pvalues(in), parse_procedure(proc), alpha, out);
  return out.str();
}

}  // namespace

TEST_CASE("parse_grid reads a pi0 sweep", "[cli][grid]") {
  std::ifstream in(std::string(FDRLAB_TEST_DATA_DIR) + "/pi0_sweep.grid");
  REQUIRE(in.good());
  const auto grid = parse_grid(in);
  CHECK(grid.sweep == SweepVariable::pi0);
  CHECK(grid.values.size() == 9);
  CHECK(grid.values.front() == 0.1);
  CHECK(grid.base.m == 100);
  CHECK(grid.base.rho == 0.0);
  CHECK(grid.base.mu_bar == 3.0);
  CHECK(grid.base.reps == 200);
  CHECK(grid.base.seed == 20081);
  REQUIRE(grid.base.procedures.size() == 4);
  CHECK(grid.base.procedures[1].kind == ProcedureKind::storey);
  CHECK(*grid.base.procedures[1].parameter == 0.5);
}

TEST_CASE("parse_grid diagnostics name the key", "[cli][grid]") {
  const std::string ok = "sweep=rho\nvalues=0,0.5\n";
  CHECK_NOTHROW(grid_from(ok));
  CHECK_NOTHROW(grid_from("# comment\n\n" + ok + "procedures=\n"));
  CHECK(error_of_grid(ok + "colour=blue\n").find("'colour'") != std::string::npos);
  CHECK(error_of_grid(ok + "pi0=1.5\n").find("'pi0'") != std::string::npos);
  CHECK(error_of_grid(ok + "m=ten\n").find("'m'") != std::string::npos);
  CHECK(error_of_grid(ok + "m=0\n").find("'m'") != std::string::npos);
  CHECK(error_of_grid(ok + "alpha=1\n").find("'alpha'") != std::string::npos);
  CHECK(error_of_grid(ok + "reps=-3\n").find("'reps'") != std::string::npos);
  CHECK(error_of_grid(ok + "procedures=lsu,nonsense\n").find("'procedures'") != std::string::npos);
  CHECK(error_of_grid(ok + "rho=0.2\nrho=0.3\n").find("'rho'") != std::string::npos);
  CHECK(error_of_grid("values=0.1\n").find("'sweep'") != std::string::npos);
  CHECK(error_of_grid("sweep=pi0\n").find("'values'") != std::string::npos);
  CHECK(error_of_grid("sweep=alpha\nvalues=0.1\n").find("'sweep'") != std::string::npos);
  CHECK(error_of_grid("sweep=pi0\nvalues=0.1,1.2\n").find("'values'") != std::string::npos);
  CHECK(error_of_grid("sweep=pi0\nvalues=0.1,,0.2\n").find("'values'") != std::string::npos);
  CHECK(error_of_grid("sweep pi0\n").find("line 1") != std::string::npos);
}

TEST_CASE("experiment CSV", "[cli][csv]") {
  auto grid = grid_from(
      "sweep=pi0\nvalues=0.2,0.5,1\nm=30\nreps=150\nseed=5\n"
      "procedures=lsu,oracle,storey:0.5,br-dep\n");

  std::ostringstream first;
  write_experiment_csv(grid, first, 1);
  std::ostringstream second;
  write_experiment_csv(grid, second, 4);
  CHECK(first.str() == second.str());

  const auto lines = lines_of(first.str());
  REQUIRE(lines.size() == 1 + 3 * 4);
  CHECK(lines[0] == kCsvHeader);
  CHECK(lines[1].rfind("pi0,0.2,LSU,", 0) == 0);
  CHECK(lines[2].rfind("pi0,0.2,LSU-Oracle,", 0) == 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 9);
    CHECK(lines[i].substr(lines[i].size() - 6) == ",150,5");
  }
  // pi0 = 1 has no alternatives: power columns are NA.
  CHECK(lines.back().find(",NA,NA,") != std::string::npos);

  grid.base.procedures.clear();
  std::ostringstream empty;
  write_experiment_csv(grid, empty);
  CHECK(empty.str() == std::string(kCsvHeader) + "\n");
}

TEST_CASE("read_pvalues", "[cli][adjust]") {
  std::istringstream in("# header\n0.5\n\n  1e-3 \n1\n");
  const auto file = read_pvalues(in);
  CHECK(file.values == std::vector<double>{0.5, 1e-3, 1.0});
  CHECK(file.tokens == std::vector<std::string>{"0.5", "1e-3", "1"});

  auto message = [](const std::string& text) {
    std::istringstream s(text);
    try {
      read_pvalues(s);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("") == "no p-values");
  CHECK(message("# only a comment\n\n") == "no p-values");
  CHECK(message("0.1\n0.2\n1.5\n").find("line 3") != std::string::npos);
  CHECK(message("0.1\nabc\n").find("line 2") != std::string::npos);
  CHECK(message("-0.01\n").find("line 1") != std::string::npos);
  CHECK(message("nan\n").find("line 1") != std::string::npos);
}

TEST_CASE("adjust report", "[cli][adjust]") {
  const std::string report = adjust_text("0.001\n0.02\n0.03\n0.9\n", "lsu", 0.05);
  CHECK(report ==
        "index\tp_value\trejected\n"
        "1\t0.001\t1\n"
        "2\t0.02\t1\n"
        "3\t0.03\t1\n"
        "4\t0.9\t0\n"
        "# procedure: LSU\n"
        "# alpha: 0.05\n"
        "# m: 4\n"
        "# k: 3\n"
        "# realized_threshold: 0.0375\n");

  const std::string storey = adjust_text("0.001\n0.002\n0.003\n0.8\n", "storey:alpha", 0.05);
  CHECK(storey.find("# estimator_value: 1.9\n") != std::string::npos);
  CHECK(storey.find("# k: 3\n") != std::string::npos);

  CHECK_THROWS_AS(adjust_text("0.1\n", "oracle", 0.05), UsageError);
  CHECK_THROWS_AS(adjust_text("0.1\n", "lsu", 1.5), UsageError);
}

TEST_CASE("adjust agrees with the library on random files", "[cli][adjust][oracle]") {
  std::mt19937_64 gen(8080);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::vector<std::string> procs{"lsu",    "holm",     "br1s", "fdr09:0.5",  "storey:0.5",
                                       "quant",  "bky06",    "br2s", "br-dep-holm", "br-dep"};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(unif(gen) * 60.0);
    std::string text;
    std::vector<double> values;
    for (std::size_t h = 0; h < m; ++h) {
      double v = unif(gen);
      v = trial % 2 ? v * v * v * v : v;
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      text += buf;
      text += trial % 7 == 0 ? "\n\n" : "\n";
      values.push_back(v);
    }
    const auto& name = procs[static_cast<std::size_t>(trial) % procs.size()];
    const auto spec = parse_procedure(name);
    const PValueVector p(values);
    const OrderedPValues ordered(p);
    const auto expected = apply_procedure(spec, ordered, 0.05);

    const auto lines = lines_of(adjust_text(text, name, 0.05));
    REQUIRE(lines.size() >= m + 5);
    for (std::size_t h = 0; h < m; ++h) {
      const auto& line = lines[h + 1];
      const char flag = line.back();
      CHECK((flag == '1') == expected.is_rejected(h));
    }
    CHECK(lines[m + 4] == "# k: " + std::to_string(expected.k));
  }
}

TEST_CASE("tables", "[cli][tables]") {
  std::ostringstream out;
  write_tables(100, 0.05, out);
  CHECK(out.str() == read_file(std::string(FDRLAB_TEST_DATA_DIR) + "/tables_m100_a005.txt"));
  CHECK(out.str().find("Storey-1/2\t0.5\n") != std::string::npos);
  CHECK(out.str().find("FDR09-1/2\t0.1\n") != std::string::npos);

  std::ostringstream single;
  write_tables(1, 0.05, single);
  std::size_t rows = 0;
  for (const auto& line : lines_of(single.str())) {
    if (line.empty() || line[0] == '#' || line.rfind("procedure", 0) == 0 ||
        line.rfind("lambda", 0) == 0) {
      continue;
    }
    const double v = std::stod(line.substr(line.find('\t') + 1));
    CHECK(v >= 0.0);
    CHECK(v <= 0.05 / (1.0 / 3.0) + 1e-12);
    ++rows;
  }
  CHECK(rows == 9);

  std::ostringstream printed;
  write_tables(100, 0.05, printed, true);
  CHECK(printed.str().find("(1 + 1/m)") != std::string::npos);

  std::ostringstream sink;
  CHECK_THROWS_AS(write_tables(0, 0.05, sink), UsageError);
  CHECK_THROWS_AS(write_tables(10, 0.0, sink), UsageError);
}

TEST_CASE("format_number", "[cli]") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333");
  CHECK(format_number(1e-7) == "1e-07");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}
