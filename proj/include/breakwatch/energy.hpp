#pragma once

#include <cmath>
#include <vector>

namespace breakwatch {

// |a - b|^alpha with fast paths for the common exponents. Every pairwise
// distance in the library flows through this one function so that incremental
// sweeps, brute-force evaluation and test oracles agree bit for bit.
inline double alpha_distance(double a, double b, double alpha) {
    const double d = a < b ? b - a : a - b;
    if (alpha == 2.0) return d * d;
    if (alpha == 1.0) return d;
    return std::pow(d, alpha);
}

// Sample energy divergence between samples X and Y:
//   2/(nm) * sum |x_i - y_j|^a  -  mean within-X pair distance
//                               -  mean within-Y pair distance.
// Zero in expectation iff the distributions coincide (for alpha in (0, 2));
// the estimate itself may be negative and is never clamped. Requires at least
// two points per sample (SampleTooSmallError) and alpha in (0, 2]
// (InvalidAlphaError). Accumulation is compensated, so the result is stable
// against cancellation for large samples.
double e_hat(const std::vector<double>& x, const std::vector<double>& y, double alpha);

// Scaled divergence nm/(n+m) * e_hat, the quantity maximized over candidate
// splits by the energy-based detectors.
double q_hat(const std::vector<double>& x, const std::vector<double>& y, double alpha);

}  // namespace breakwatch
