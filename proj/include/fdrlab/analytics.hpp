#pragma once

// Closed-form results: exact FDR under maximal dependence (all p-values equal,
// all nulls true), the critical alternative mean for the linear step-up,
// lambda calibration bounds, and the binomial inverse-moment oracle.

#include <cstddef>
#include <optional>

namespace fdrlab {

enum class MaxDepProcedure { br1s, fdr09, storey, quantile, bky06, br2s };

struct MaxDepQuery {
  MaxDepProcedure procedure;
  /// lambda for br1s/storey/bky06/br2s, eta for fdr09; unused for quantile.
  double parameter = 0.0;
  /// Used for quantile only.
  std::size_t k0 = 0;
  std::size_t m = 1;
  double alpha = 0.05;

  static MaxDepQuery br1s(std::size_t m, double alpha, double lambda);
  static MaxDepQuery fdr09(std::size_t m, double alpha, double eta);
  static MaxDepQuery storey(std::size_t m, double alpha, double lambda);
  static MaxDepQuery quantile(std::size_t m, double alpha, std::size_t k0);
  static MaxDepQuery bky06(std::size_t m, double alpha, double lambda);
  static MaxDepQuery br2s(std::size_t m, double alpha, double lambda);
};

/// Which form of the Storey correction term (alpha(1-lambda)c - lambda)_+ to use:
/// c = m/(m+1) follows from evaluating G1 at a common p-value above lambda;
/// c = 1 + 1/m is the alternative printed form.
enum class StoreyCorrection { exact, printed };

/// Exact FDR when all m p-values equal one uniform draw and m0 = m, clamped to [0,1].
double maxdep_fdr(const MaxDepQuery& q, StoreyCorrection correction = StoreyCorrection::exact);

/// Alternative mean above which the linear step-up asymptotically rejects more
/// than a fraction alpha + 1/m of the nulls. Empty when pi0 >= 1/(1+alpha).
std::optional<double> critical_mean(double pi0, double alpha);

struct LambdaBounds {
  double lower;  // alpha / (1 + alpha + 1/m)
  double upper;  // alpha / (alpha + 1/m)
};

LambdaBounds lambda_bounds(std::size_t m, double alpha);

/// E[1/(1+Y)] for Y ~ Binomial(k-1, q), by summing the pmf.
double lemma4_lhs_exact(std::size_t k, double q);

}  // namespace fdrlab
