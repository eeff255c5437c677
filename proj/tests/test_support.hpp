#pragma once

// Shared generators and brute-force oracles for the unit and acceptance suites.
// The oracles deliberately avoid sorting: order statistics are found by counting.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace fdrlab::testing {

/// Random p-values; with `ties` the values are snapped to a coarse grid so
/// repeats are common.
inline std::vector<double> random_pvalues(std::mt19937_64& gen, std::size_t m, bool ties) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> p(m);
  for (auto& v : p) {
    v = unif(gen);
    if (ties) {
      v = std::floor(v * 8.0) / 16.0;  // values in {0, 1/16, ..., 7/16}
    }
  }
  return p;
}

/// Non-decreasing thresholds with Delta(0) = 0 and Delta(m) below 1.5.
inline std::vector<double> random_monotone_thresholds(std::mt19937_64& gen, std::size_t m) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double reach = 1.5 * unif(gen);
  std::vector<double> delta(m + 1, 0.0);
  for (std::size_t i = 1; i <= m; ++i) {
    delta[i] = delta[i - 1] + unif(gen) * reach / static_cast<double>(m);
  }
  return delta;
}

/// Arbitrary non-negative thresholds (not necessarily monotone).
inline std::vector<double> random_thresholds(std::mt19937_64& gen, std::size_t m) {
  std::uniform_real_distribution<double> unif(0.0, 0.6);
  std::vector<double> delta(m + 1, 0.0);
  for (std::size_t i = 1; i <= m; ++i) {
    delta[i] = unif(gen);
  }
  return delta;
}

/// i-th order statistic (1-based) by counting: the value v with
/// #{p < v} < i <= #{p <= v}.
inline double order_stat_by_count(const std::vector<double>& p, std::size_t i) {
  for (double v : p) {
    std::size_t below = 0;
    std::size_t at_most = 0;
    for (double w : p) {
      below += w < v ? 1 : 0;
      at_most += w <= v ? 1 : 0;
    }
    if (below < i && i <= at_most) {
      return v;
    }
  }
  return -1.0;
}

inline std::size_t step_up_count_oracle(const std::vector<double>& p,
                                        const std::vector<double>& delta) {
  std::size_t k = 0;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    if (order_stat_by_count(p, i) <= delta[i]) {
      k = i;
    }
  }
  return k;
}

inline std::size_t step_down_count_oracle(const std::vector<double>& p,
                                          const std::vector<double>& delta) {
  std::size_t k = 0;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    bool all = true;
    for (std::size_t j = 1; j <= i; ++j) {
      all = all && order_stat_by_count(p, j) <= delta[j];
    }
    if (all) {
      k = i;
    }
  }
  return k;
}

/// The k smallest p-values as flags, ties broken by index: h is in the set
/// when fewer than k hypotheses rank ahead of it.
inline std::vector<std::uint8_t> rejected_set_oracle(const std::vector<double>& p, std::size_t k) {
  std::vector<std::uint8_t> flags(p.size(), 0);
  for (std::size_t h = 0; h < p.size(); ++h) {
    std::size_t ahead = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      ahead += p[j] < p[h] || (p[j] == p[h] && j < h) ? 1 : 0;
    }
    flags[h] = ahead < k ? 1 : 0;
  }
  return flags;
}

}  // namespace fdrlab::testing
