#include "breakwatch/series.hpp"

#include <algorithm>
#include <cmath>

#include "breakwatch/errors.hpp"

namespace breakwatch {

TimeSeries validate_series(TimeSeries series) {
    const std::size_t n = series.values.size();
    if (n == 0) throw EmptySeriesError();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(series.values[i])) throw NonFiniteValueError(i + 1);
    }
    if (series.timestamps) {
        const auto& ts = *series.timestamps;
        if (ts.size() != n) throw TimestampsNotIncreasingError(ts.size());
        for (std::size_t i = 1; i < ts.size(); ++i) {
            if (ts[i] <= ts[i - 1]) throw TimestampsNotIncreasingError(i + 1);
        }
    }
    auto check_labels = [n](std::vector<std::size_t>& labels, const char* kind) {
        std::sort(labels.begin(), labels.end());
        for (std::size_t v : labels) {
            if (v < 1 || v > n) throw LabelOutOfRangeError(kind, v, n);
        }
    };
    check_labels(series.true_breakouts, "breakout");
    check_labels(series.anomaly_labels, "anomaly");
    return series;
}

ScaledSeries scale_to_unit(const std::vector<double>& values) {
    ScaledSeries out;
    if (values.empty()) throw EmptySeriesError();
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    out.min = *lo;
    out.max = *hi;
    out.values.resize(values.size());
    if (out.min == out.max) {
        out.degenerate = true;
        std::fill(out.values.begin(), out.values.end(), 0.5);
        return out;
    }
    const double span = out.max - out.min;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.values[i] = (values[i] - out.min) / span;
    }
    return out;
}

}  // namespace breakwatch
