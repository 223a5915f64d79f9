#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "breakwatch/series.hpp"

namespace breakwatch {

// Recipe for a piecewise-constant series with Gaussian noise and injected
// point anomalies. Generation is fully determined by the seed, with a fixed
// draw order (noise first, then anomaly positions, then signs), so outputs
// are stable across runs and platforms.
struct SynthSpec {
    std::vector<std::size_t> segment_lengths;  // nonempty, each >= 1
    std::vector<double> segment_means;         // same arity as lengths
    double noise_sd = 0.0;                     // >= 0
    std::size_t anomaly_count = 0;             // < total length
    // Anomaly displacement in multiples of the largest adjacent mean shift
    // (falls back to 1.0 when the segment plan has no shift to scale by). Each
    // anomaly REPLACES its point with segment mean +/- displacement.
    double anomaly_magnitude = 0.0;
    std::uint64_t seed = 0;
};

// Generates the series with true_breakouts at the segment boundaries
// (cumulative lengths, i.e. the last index of each non-final segment) and
// anomaly_labels at the injected positions. Throws InvalidSynthSpecError.
TimeSeries synthesize(const SynthSpec& spec);

// Absolute distance between the true breakout index and the estimate;
// empty when there is no estimate (a miss).
std::optional<double> ttd(std::size_t true_index, std::optional<std::size_t> estimate);

struct MatchCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

// Greedy nearest-first matching: detection/truth pairs within `window`
// observations are matched in order of increasing distance (ties toward the
// earlier detection, then the earlier truth); leftovers count as fp / fn.
MatchCounts match_detections(const std::vector<std::size_t>& detections,
                             const std::vector<std::size_t>& truths, std::size_t window);

struct Scores {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

// Precision tp/(tp+fp), recall tp/(tp+fn), F = 2PR/(P+R); each term is 0
// when its denominator is 0.
Scores scores_from(const MatchCounts& counts);

}  // namespace breakwatch
