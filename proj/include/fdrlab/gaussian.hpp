#pragma once

namespace fdrlab {

/// Standard Gaussian upper tail, P(N(0,1) > x).
double gaussian_upper_tail(double x);

/// Inverse of gaussian_upper_tail on (0,1). Throws std::invalid_argument outside.
double gaussian_upper_tail_inverse(double u);

}  // namespace fdrlab
