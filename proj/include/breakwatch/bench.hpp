#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "breakwatch/config.hpp"

namespace breakwatch {

struct BenchConfig {
    std::vector<std::size_t> sizes{500, 1000, 2000};
    std::size_t repeats = 1;
    DetectionConfig detection;
    std::uint64_t seed = 0;
};

struct BenchRow {
    Method method = Method::edm;
    std::size_t n = 0;
    double wall_ms = 0.0;  // median over repeats
    std::size_t tau = 0;
    std::size_t kappa = 0;
    double statistic = 0.0;
    double p_value = 0.0;
};

struct BenchResult {
    std::vector<BenchRow> rows;

    // wall(edivisive at n) / wall(method at n); 0 when either row is missing.
    double speedup(Method method, std::size_t n) const;
};

// Timed permutation-backed detection on synthetic two-segment series.
BenchResult run_bench(const BenchConfig& config);

}  // namespace breakwatch
