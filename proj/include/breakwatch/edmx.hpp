#pragma once

#include <vector>

#include "breakwatch/config.hpp"
#include "breakwatch/edm.hpp"

namespace breakwatch {

// Exact-median detector for the squared-distance case: the robust divergence
// collapses to 2*(median(A) - median(B))^2, so the sweep tracks medians of
// the raw segment values with heap pairs instead of distance windows.
// The outer loop grows A one point per tau; the inner loop rebuilds B's heaps
// from B = Z[tau+1 .. tau+delta] by successive adds and extends kappa to n.
// Values are scaled to [0, 1] first; a constant series short-circuits to
// (delta, 2*delta, 0). The statistic is never negative. Throws
// SeriesTooShortError when n < 2*delta. config.alpha is ignored: this
// detector is the alpha = 2 specialization by construction.
DetectionEstimate edmx_detect(const std::vector<double>& values, const DetectionConfig& config);

// Same sweep with a per-cell observer for audits.
DetectionEstimate edmx_scan(const std::vector<double>& values, const DetectionConfig& config,
                            const CellObserver& observer);

}  // namespace breakwatch
