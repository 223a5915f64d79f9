#pragma once

#include <vector>

#include "breakwatch/config.hpp"
#include "breakwatch/edm.hpp"
#include "breakwatch/series.hpp"

namespace breakwatch {

// Non-robust reference detector: exhaustive argmax of the scaled energy
// divergence q_hat over the same (tau, kappa) grid the robust detectors
// search, ties toward the smallest tau then kappa. Pairwise sums are carried
// incrementally (O(segment) work per cell), which keeps it usable as the
// benchmark baseline, but it remains a mean-based statistic: a single large
// anomaly drags the argmax, which is exactly the contrast the robust
// detectors exist for. Operates on raw values -- the argmax is unchanged by
// affine maps, so scaling would only relabel the statistic. Throws
// SeriesTooShortError when n < 2*delta.
DetectionEstimate edivisive_detect(const std::vector<double>& values,
                                   const DetectionConfig& config);

// Same scan with a per-cell observer for audits.
DetectionEstimate edivisive_scan(const std::vector<double>& values, const DetectionConfig& config,
                                 const CellObserver& observer);

enum class Smoother { none, mean, median };

std::optional<Smoother> smoother_from_string(const std::string& name);
std::string to_string(Smoother s);

// Centered rolling smoother. `window` must be odd and >= 3 and fit the
// series (WindowTooLargeError otherwise). Near the edges the window shrinks
// symmetrically (radius min(w/2, i-1, n-i)), so the first and last points are
// passed through unchanged and a monotone series is left exactly as it was.
std::vector<double> smooth(const std::vector<double>& values, Smoother kind, std::size_t window);

// Series-level wrapper: smooths the values, carries timestamps and labels.
TimeSeries smooth_series(const TimeSeries& series, Smoother kind, std::size_t window);

}  // namespace breakwatch
