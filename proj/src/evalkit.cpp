#include "breakwatch/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "breakwatch/errors.hpp"
#include "breakwatch/rng.hpp"

namespace breakwatch {

TimeSeries synthesize(const SynthSpec& spec) {
    if (spec.segment_lengths.empty()) throw InvalidSynthSpecError("need at least one segment");
    if (spec.segment_lengths.size() != spec.segment_means.size()) {
        throw InvalidSynthSpecError("segment_lengths and segment_means must have the same arity");
    }
    for (std::size_t len : spec.segment_lengths) {
        if (len == 0) throw InvalidSynthSpecError("segment lengths must be positive");
    }
    if (!(spec.noise_sd >= 0.0)) throw InvalidSynthSpecError("noise_sd must be non-negative");
    if (!(spec.anomaly_magnitude >= 0.0)) {
        throw InvalidSynthSpecError("anomaly_magnitude must be non-negative");
    }
    const std::size_t n =
        std::accumulate(spec.segment_lengths.begin(), spec.segment_lengths.end(), std::size_t{0});
    if (spec.anomaly_count >= n) {
        throw InvalidSynthSpecError("anomaly_count must be smaller than the series length");
    }

    rng::Generator gen(spec.seed);
    TimeSeries out;
    out.values.reserve(n);
    std::vector<double> point_mean(n);
    std::size_t pos = 0;
    for (std::size_t k = 0; k < spec.segment_lengths.size(); ++k) {
        for (std::size_t i = 0; i < spec.segment_lengths[k]; ++i, ++pos) {
            point_mean[pos] = spec.segment_means[k];
            out.values.push_back(spec.segment_means[k] + spec.noise_sd * gen.gaussian());
        }
    }

    std::size_t cumulative = 0;
    for (std::size_t k = 0; k + 1 < spec.segment_lengths.size(); ++k) {
        cumulative += spec.segment_lengths[k];
        out.true_breakouts.push_back(cumulative);  // last index of segment k, 1-based
    }

    if (spec.anomaly_count > 0) {
        double unit = 0.0;
        for (std::size_t k = 0; k + 1 < spec.segment_means.size(); ++k) {
            unit = std::max(unit, std::abs(spec.segment_means[k + 1] - spec.segment_means[k]));
        }
        if (unit == 0.0) unit = 1.0;  // nothing to scale by: one segment or flat means
        // Distinct positions via a partial Fisher-Yates over all indices.
        std::vector<std::size_t> indices(n);
        std::iota(indices.begin(), indices.end(), std::size_t{0});
        for (std::size_t i = 0; i < spec.anomaly_count; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(gen.below(n - i));
            std::swap(indices[i], indices[j]);
        }
        out.anomaly_labels.assign(indices.begin(),
                                  indices.begin() + static_cast<std::ptrdiff_t>(spec.anomaly_count));
        std::sort(out.anomaly_labels.begin(), out.anomaly_labels.end());
        for (std::size_t& label : out.anomaly_labels) {
            const double sign = gen.below(2) == 0 ? 1.0 : -1.0;
            out.values[label] = point_mean[label] + sign * spec.anomaly_magnitude * unit;
            label += 1;  // 0-based position -> 1-based label
        }
    }
    return validate_series(std::move(out));
}

std::optional<double> ttd(std::size_t true_index, std::optional<std::size_t> estimate) {
    if (!estimate) return std::nullopt;
    const double t = static_cast<double>(true_index);
    const double e = static_cast<double>(*estimate);
    return std::abs(e - t);
}

MatchCounts match_detections(const std::vector<std::size_t>& detections,
                             const std::vector<std::size_t>& truths, std::size_t window) {
    struct Pair {
        std::size_t distance;
        std::size_t det;
        std::size_t truth;
    };
    std::vector<Pair> candidates;
    for (std::size_t d = 0; d < detections.size(); ++d) {
        for (std::size_t t = 0; t < truths.size(); ++t) {
            const std::size_t dist = detections[d] > truths[t] ? detections[d] - truths[t]
                                                               : truths[t] - detections[d];
            if (dist <= window) candidates.push_back({dist, d, t});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Pair& a, const Pair& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        if (a.det != b.det) return a.det < b.det;
        return a.truth < b.truth;
    });
    std::vector<bool> det_used(detections.size(), false);
    std::vector<bool> truth_used(truths.size(), false);
    MatchCounts counts;
    for (const Pair& c : candidates) {
        if (det_used[c.det] || truth_used[c.truth]) continue;
        det_used[c.det] = true;
        truth_used[c.truth] = true;
        ++counts.tp;
    }
    counts.fp = detections.size() - counts.tp;
    counts.fn = truths.size() - counts.tp;
    return counts;
}

Scores scores_from(const MatchCounts& counts) {
    Scores s;
    const double tp = static_cast<double>(counts.tp);
    if (counts.tp + counts.fp > 0) s.precision = tp / static_cast<double>(counts.tp + counts.fp);
    if (counts.tp + counts.fn > 0) s.recall = tp / static_cast<double>(counts.tp + counts.fn);
    if (s.precision + s.recall > 0.0) {
        s.f_measure = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    }
    return s;
}

}  // namespace breakwatch
