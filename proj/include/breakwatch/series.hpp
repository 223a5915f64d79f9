#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace breakwatch {

// A univariate series. Indices in labels are 1-based, matching every external
// interface of this library (reports, CSV rows, CLI output).
struct TimeSeries {
    std::vector<double> values;
    std::optional<std::vector<std::int64_t>> timestamps;  // strictly increasing when present
    std::vector<std::size_t> true_breakouts;              // 1-based, sorted
    std::vector<std::size_t> anomaly_labels;              // 1-based, sorted

    std::size_t size() const { return values.size(); }
};

// Validates finiteness, non-emptiness, timestamp monotonicity and label
// ranges; returns the series unchanged. Throws EmptySeriesError,
// NonFiniteValueError (with the first offending 1-based index),
// TimestampsNotIncreasingError or LabelOutOfRangeError.
TimeSeries validate_series(TimeSeries series);

// Result of mapping values onto [0, 1] by x -> (x - min) / (max - min).
// A constant series cannot be scaled; it maps to all 0.5 with the flag set,
// and detectors treat that as "no breakout structure".
struct ScaledSeries {
    std::vector<double> values;
    double min = 0.0;
    double max = 0.0;
    bool degenerate = false;

    std::size_t size() const { return values.size(); }
};

ScaledSeries scale_to_unit(const std::vector<double>& values);

}  // namespace breakwatch
