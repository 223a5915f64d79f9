#include "breakwatch/baseline.hpp"

#include <algorithm>

#include "breakwatch/energy.hpp"
#include "breakwatch/errors.hpp"
#include "breakwatch/robust_stat.hpp"

namespace breakwatch {
namespace {

// Sum of |z[i] - point|^alpha over a contiguous range, unrolled into four
// independent accumulator chains: the baseline's cost is dominated by this
// loop, and a single serial add chain would leave it latency-bound. The
// summation order is fixed, so results are reproducible run to run.
double pair_sum(const double* z, std::size_t count, double point, double alpha) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t i = 0;
    if (alpha == 2.0) {
        for (; i + 4 <= count; i += 4) {
            const double d0 = z[i] - point;
            const double d1 = z[i + 1] - point;
            const double d2 = z[i + 2] - point;
            const double d3 = z[i + 3] - point;
            a0 += d0 * d0;
            a1 += d1 * d1;
            a2 += d2 * d2;
            a3 += d3 * d3;
        }
        for (; i < count; ++i) {
            const double d = z[i] - point;
            a0 += d * d;
        }
    } else {
        for (; i < count; ++i) a0 += alpha_distance(z[i], point, alpha);
    }
    return (a0 + a1) + (a2 + a3);
}

}  // namespace

DetectionEstimate edivisive_scan(const std::vector<double>& values, const DetectionConfig& config,
                                 const CellObserver& observer) {
    config.validate();
    const std::size_t n = values.size();
    const std::size_t delta = config.delta;
    if (n < 2 * delta) throw SeriesTooShortError(n, 2 * delta);
    const double* z = values.data();
    const double alpha = config.alpha;

    DetectionEstimate best;
    bool any = false;
    auto consider = [&](double q, std::size_t tau, std::size_t kappa) {
        if (observer) observer(tau, kappa, q);
        if (!any || q > best.statistic ||
            (q == best.statistic &&
             (tau < best.tau || (tau == best.tau && kappa < best.kappa)))) {
            best = {tau, kappa, q};
            any = true;
        }
    };

    // Running pairwise sums: within_a over A = z[0..tau), rebuilt-from-the-
    // left between/within_b sums per row, each extended point by point.
    double within_a = 0.0;
    for (std::size_t i = 1; i < delta; ++i) within_a += pair_sum(z, i, z[i], alpha);
    for (std::size_t tau = delta; tau + delta <= n; ++tau) {
        if (tau > delta) within_a += pair_sum(z, tau - 1, z[tau - 1], alpha);
        const double mean_a = within_a / (0.5 * static_cast<double>(tau) *
                                          static_cast<double>(tau - 1));
        double between = 0.0;
        double within_b = 0.0;
        for (std::size_t j = tau; j < tau + delta; ++j) {
            between += pair_sum(z, tau, z[j], alpha);
            within_b += pair_sum(z + tau, j - tau, z[j], alpha);
        }
        for (std::size_t kappa = tau + delta;; ++kappa) {
            const std::size_t m = kappa - tau;
            const double e = 2.0 * between / (static_cast<double>(tau) * static_cast<double>(m)) -
                             mean_a -
                             within_b / (0.5 * static_cast<double>(m) * static_cast<double>(m - 1));
            consider(segment_prefactor(tau, m) * e, tau, kappa);
            if (kappa == n) break;
            between += pair_sum(z, tau, z[kappa], alpha);
            within_b += pair_sum(z + tau, m, z[kappa], alpha);
        }
    }
    return best;
}

DetectionEstimate edivisive_detect(const std::vector<double>& values,
                                   const DetectionConfig& config) {
    return edivisive_scan(values, config, {});
}

std::optional<Smoother> smoother_from_string(const std::string& name) {
    if (name == "none") return Smoother::none;
    if (name == "mean") return Smoother::mean;
    if (name == "median") return Smoother::median;
    return std::nullopt;
}

std::string to_string(Smoother s) {
    switch (s) {
        case Smoother::none: return "none";
        case Smoother::mean: return "mean";
        case Smoother::median: return "median";
    }
    return "none";
}

std::vector<double> smooth(const std::vector<double>& values, Smoother kind, std::size_t window) {
    if (kind == Smoother::none) return values;
    const std::size_t n = values.size();
    if (window < 3 || window % 2 == 0) {
        throw InvalidConfigError("smoothing window must be odd and at least 3");
    }
    if (window > n) throw WindowTooLargeError(window, n);
    const std::size_t radius = window / 2;
    std::vector<double> out(n);
    std::vector<double> buf;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = std::min({radius, i, n - 1 - i});
        const std::size_t lo = i - r;
        const std::size_t hi = i + r;  // inclusive
        if (kind == Smoother::mean) {
            double acc = 0.0;
            for (std::size_t j = lo; j <= hi; ++j) acc += values[j];
            out[i] = acc / static_cast<double>(2 * r + 1);
        } else {
            buf.assign(values.begin() + static_cast<std::ptrdiff_t>(lo),
                       values.begin() + static_cast<std::ptrdiff_t>(hi + 1));
            out[i] = median_of(std::move(buf));
        }
    }
    return out;
}

TimeSeries smooth_series(const TimeSeries& series, Smoother kind, std::size_t window) {
    TimeSeries out = series;
    out.values = smooth(series.values, kind, window);
    return out;
}

}  // namespace breakwatch
