#pragma once

#include <cstdint>
#include <vector>

#include "breakwatch/config.hpp"

namespace breakwatch {

struct PermutationResult {
    double q_observed = 0.0;
    std::vector<double> q_permuted;  // one statistic per replica, in replica order
    double p_value = 0.0;
    std::size_t permutations = 0;
    std::uint64_t seed = 0;
};

// Exceedance fraction #{q_r >= q_observed} / (R + 1), the literal estimate
// with a weak inequality; p = 0 is attainable when nothing reaches q_observed.
double p_value_from(double q_observed, const std::vector<double>& q_permuted);

// Runs the requested detector once; shared dispatch for test and CLI paths.
DetectionEstimate run_detector(Method method, const std::vector<double>& values,
                               const DetectionConfig& config);

// Permutation significance test: the detector's maximized statistic on the
// original series is compared against R replicas, each a full detector run on
// a Fisher-Yates shuffle of the values. Replica r draws from a generator
// derived from (config.seed, r) alone, so results are bit-identical for a
// fixed seed regardless of worker count or schedule. Replicas run across
// std::thread workers capped by the BREAKWATCH_THREADS environment variable.
PermutationResult permutation_test(const std::vector<double>& values, Method method,
                                   const DetectionConfig& config);

// Full externally-reported outcome: argmax location, p-value, significance
// verdict at config.level.
BreakoutReport detect_with_significance(const std::vector<double>& values, Method method,
                                        const DetectionConfig& config);

}  // namespace breakwatch
