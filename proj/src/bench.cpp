#include "breakwatch/bench.hpp"

#include <chrono>

#include "breakwatch/errors.hpp"
#include "breakwatch/evalkit.hpp"
#include "breakwatch/rng.hpp"
#include "breakwatch/robust_stat.hpp"
#include "breakwatch/sigtest.hpp"

namespace breakwatch {
namespace {

TimeSeries bench_series(std::size_t n, std::uint64_t seed) {
    SynthSpec spec;
    spec.segment_lengths = {n / 2, n - n / 2};
    spec.segment_means = {0.0, 1.0};
    spec.noise_sd = 0.5;
    spec.anomaly_count = 0;
    spec.anomaly_magnitude = 0.0;
    spec.seed = rng::mix(seed, n);
    return synthesize(spec);
}

}  // namespace

double BenchResult::speedup(Method method, std::size_t n) const {
    double base = 0.0;
    double mine = 0.0;
    for (const auto& row : rows) {
        if (row.n != n) continue;
        if (row.method == Method::edivisive) base = row.wall_ms;
        if (row.method == method) mine = row.wall_ms;
    }
    if (base <= 0.0 || mine <= 0.0) return 0.0;
    return base / mine;
}

BenchResult run_bench(const BenchConfig& config) {
    if (config.sizes.empty() || config.repeats == 0) {
        throw InvalidConfigError("bench needs at least one size and one repeat");
    }
    config.detection.validate();
    BenchResult result;
    const Method methods[] = {Method::edm, Method::edmx, Method::edivisive};
    for (std::size_t n : config.sizes) {
        const TimeSeries series = bench_series(n, config.seed);
        for (Method method : methods) {
            BenchRow row;
            row.method = method;
            row.n = n;
            std::vector<double> times;
            times.reserve(config.repeats);
            BreakoutReport last;
            for (std::size_t r = 0; r < config.repeats; ++r) {
                const auto start = std::chrono::steady_clock::now();
                last = detect_with_significance(series.values, method, config.detection);
                const auto stop = std::chrono::steady_clock::now();
                times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
            }
            row.wall_ms = median_of(times);
            row.tau = last.tau_hat.value_or(0);
            row.kappa = last.kappa_hat.value_or(0);
            row.statistic = last.statistic;
            row.p_value = last.p_value;
            result.rows.push_back(row);
        }
    }
    return result;
}

}  // namespace breakwatch
