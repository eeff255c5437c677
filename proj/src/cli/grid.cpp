#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

#include "fdrlab/cli.hpp"

namespace fdrlab::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> items;
  if (trim(s).empty()) {
    return items;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    items.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return items;
}

double to_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InputError("key '" + std::string(key) + "': expected a number, got '" +
                     std::string(text) + "'");
  }
  return v;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InputError("key '" + std::string(key) + "': expected a non-negative integer, got '" +
                     std::string(text) + "'");
  }
  return v;
}

void check_range(std::string_view key, double v, double lo, double hi) {
  if (!(v >= lo && v <= hi)) {
    throw InputError("key '" + std::string(key) + "': value " + format_number(v) +
                     " outside [" + format_number(lo) + ", " + format_number(hi) + "]");
  }
}

void check_sweep_value(SweepVariable sweep, double v) {
  switch (sweep) {
    case SweepVariable::pi0:
      check_range("values", v, 0.0, 1.0);
      break;
    case SweepVariable::rho:
      check_range("values", v, 0.0, 1.0);
      break;
    case SweepVariable::mu_bar:
      check_range("values", v, 0.0, 1e6);
      break;
  }
}

}  // namespace

const char* sweep_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::pi0:
      return "pi0";
    case SweepVariable::mu_bar:
      return "mu_bar";
    case SweepVariable::rho:
      return "rho";
  }
  return "?";
}

ExperimentGrid parse_grid(std::istream& in) {
  std::map<std::string, std::string, std::less<>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("line " + std::to_string(line_no) + ": expected key=value, got '" +
                       std::string(body) + "'");
    }
    const std::string key(trim(body.substr(0, eq)));
    if (key.empty()) {
      throw InputError("line " + std::to_string(line_no) + ": empty key");
    }
    if (!entries.emplace(key, std::string(trim(body.substr(eq + 1)))).second) {
      throw InputError("key '" + key + "' given more than once");
    }
  }

  ExperimentGrid grid;
  SimConfig& cfg = grid.base;
  bool have_sweep = false;
  bool have_values = false;
  for (const auto& [key, value] : entries) {
    if (key == "sweep") {
      if (value == "pi0") {
        grid.sweep = SweepVariable::pi0;
      } else if (value == "mu_bar") {
        grid.sweep = SweepVariable::mu_bar;
      } else if (value == "rho") {
        grid.sweep = SweepVariable::rho;
      } else {
        throw InputError("key 'sweep': expected one of pi0, mu_bar, rho, got '" + value + "'");
      }
      have_sweep = true;
    } else if (key == "values") {
      for (auto item : split_list(value)) {
        grid.values.push_back(to_double(key, item));
      }
      if (grid.values.empty()) {
        throw InputError("key 'values': list is empty");
      }
      have_values = true;
    } else if (key == "m") {
      cfg.m = to_unsigned(key, value);
      if (cfg.m == 0) {
        throw InputError("key 'm': must be at least 1");
      }
    } else if (key == "pi0") {
      cfg.pi0 = to_double(key, value);
      check_range(key, cfg.pi0, 0.0, 1.0);
    } else if (key == "rho") {
      cfg.rho = to_double(key, value);
      check_range(key, cfg.rho, 0.0, 1.0);
    } else if (key == "mu_bar") {
      cfg.mu_bar = to_double(key, value);
      check_range(key, cfg.mu_bar, 0.0, 1e6);
    } else if (key == "alpha") {
      cfg.alpha = to_double(key, value);
      if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
        throw InputError("key 'alpha': must lie in (0,1)");
      }
    } else if (key == "reps") {
      cfg.reps = to_unsigned(key, value);
      if (cfg.reps == 0) {
        throw InputError("key 'reps': must be at least 1");
      }
    } else if (key == "seed") {
      cfg.seed = to_unsigned(key, value);
    } else if (key == "procedures") {
      for (auto item : split_list(value)) {
        try {
          cfg.procedures.push_back(parse_procedure(item));
        } catch (const std::invalid_argument& e) {
          throw InputError(std::string("key 'procedures': ") + e.what());
        }
      }
    } else {
      throw InputError("unknown key '" + key + "'");
    }
  }
  if (!have_sweep) {
    throw InputError("missing key 'sweep'");
  }
  if (!have_values) {
    throw InputError("missing key 'values'");
  }
  for (double v : grid.values) {
    check_sweep_value(grid.sweep, v);
  }
  return grid;
}

void write_experiment_csv(const ExperimentGrid& grid, std::ostream& out, unsigned threads) {
  out << kCsvHeader << '\n';
  if (grid.base.procedures.empty()) {
    return;
  }
  for (double value : grid.values) {
    SimConfig cfg = grid.base;
    switch (grid.sweep) {
      case SweepVariable::pi0:
        cfg.pi0 = value;
        break;
      case SweepVariable::mu_bar:
        cfg.mu_bar = value;
        break;
      case SweepVariable::rho:
        cfg.rho = value;
        break;
    }
    const auto metrics = monte_carlo(cfg, threads);
    for (const auto& pm : metrics) {
      out << sweep_name(grid.sweep) << ',' << format_number(value) << ',' << pm.label << ','
          << format_number(pm.fdr) << ',' << format_number(pm.fdr_se) << ','
          << (pm.power_abs ? format_number(*pm.power_abs) : "NA") << ','
          << (pm.power_rel ? format_number(*pm.power_rel) : "NA") << ','
          << format_number(pm.fnr) << ',' << pm.reps << ',' << cfg.seed << '\n';
    }
  }
}

}  // namespace fdrlab::cli
