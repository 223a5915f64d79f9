#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include <doctest.h>

#include "breakwatch/edm.hpp"
#include "breakwatch/errors.hpp"
#include "breakwatch/rng.hpp"
#include "breakwatch/robust_stat.hpp"
#include "breakwatch/series.hpp"

#include "oracles.hpp"

using breakwatch::BetweenWindow;
using breakwatch::DetectionConfig;
using breakwatch::DetectionEstimate;
using breakwatch::MedianSource;

namespace {

DetectionConfig small_config(std::size_t delta) {
    DetectionConfig config;
    config.delta = delta;
    return config;
}

std::vector<double> step_2020() {
    std::vector<double> z(40, 0.0);
    for (std::size_t i = 20; i < 40; ++i) z[i] = 1.0;
    return z;
}

}  // namespace

TEST_CASE("step series is located at the boundary by both median sources") {
    const auto z = step_2020();
    const auto config = small_config(5);
    CHECK(breakwatch::edm_detect(z, config, MedianSource::tree).tau == 20);
    CHECK(breakwatch::edm_detect(z, config, MedianSource::exact).tau == 20);
}

TEST_CASE("one early spike does not move the estimate") {
    auto z = step_2020();
    z[4] = 100.0;  // fifth observation
    const auto est = breakwatch::edm_detect(z, small_config(5), MedianSource::exact);
    CHECK(est.tau == 20);
}

TEST_CASE("constant series short-circuits to the smallest cell") {
    const std::vector<double> z(30, 7.0);
    const auto est = breakwatch::edm_detect(z, small_config(5), MedianSource::tree);
    CHECK(est.tau == 5);
    CHECK(est.kappa == 10);
    CHECK(est.statistic == 0.0);
}

TEST_CASE("short series is rejected") {
    const std::vector<double> z(9, 0.0);
    CHECK_THROWS_AS(breakwatch::edm_detect(z, small_config(5), MedianSource::tree),
                    breakwatch::SeriesTooShortError);
}

TEST_CASE("sweep visits every feasible cell exactly once with the fresh-window statistic") {
    breakwatch::rng::Generator gen(61, 0);
    const auto z = oracle::step_series(17, 14, 1.0, 0.3, gen);
    const auto config = small_config(3);
    const auto scaled = breakwatch::scale_to_unit(z);

    std::map<std::pair<std::size_t, std::size_t>, int> visits;
    bool all_match = true;
    const auto est = breakwatch::edm_scan(
        z, config, MedianSource::exact,
        [&](std::size_t tau, std::size_t kappa, double q) {
            ++visits[{tau, kappa}];
            const std::vector<double> a(scaled.values.begin(),
                                        scaled.values.begin() + static_cast<std::ptrdiff_t>(tau));
            const std::vector<double> b(scaled.values.begin() + static_cast<std::ptrdiff_t>(tau),
                                        scaled.values.begin() + static_cast<std::ptrdiff_t>(kappa));
            const double e = breakwatch::e_tilde_windowed(a, b, config.delta, config.alpha,
                                                          config.between, MedianSource::exact);
            const double expected = breakwatch::q_tilde(tau, kappa - tau, e);
            if (q != expected) all_match = false;
        });
    CHECK(all_match);

    const std::size_t n = z.size();
    std::size_t expected_cells = 0;
    for (std::size_t tau = config.delta; tau + config.delta <= n; ++tau)
        for (std::size_t kappa = tau + config.delta; kappa <= n; ++kappa) ++expected_cells;
    CHECK(visits.size() == expected_cells);
    bool once_each = true;
    for (const auto& [cell, count] : visits)
        if (count != 1) once_each = false;
    CHECK(once_each);
    CHECK(est.tau >= 15);
    CHECK(est.tau <= 19);
}

TEST_CASE("exact-median sweep equals the brute-force grid argmax") {
    breakwatch::rng::Generator gen(62, 0);
    const std::size_t deltas[] = {2, 3, 5};
    for (int trial = 0; trial < 24; ++trial) {
        const auto config = small_config(deltas[trial % 3]);
        const std::size_t n = 2 * config.delta + static_cast<std::size_t>(gen.below(40));
        std::vector<double> z;
        if (trial % 2 == 0) {
            z = oracle::random_series(n, gen);
        } else {
            const std::size_t first = config.delta + static_cast<std::size_t>(
                                                        gen.below(n - 2 * config.delta + 1));
            z = oracle::step_series(first, n - first, 1.0 + gen.unit(), 0.2, gen);
        }
        const auto fast = breakwatch::edm_detect(z, config, MedianSource::exact);
        const auto brute = oracle::brute_edm(z, config, MedianSource::exact);
        CHECK(fast.tau == brute.tau);
        CHECK(fast.kappa == brute.kappa);
        CHECK(std::abs(fast.statistic - brute.statistic) <= 1e-12);
    }
}

TEST_CASE("tree medians pick the same boundary as exact medians on clean steps") {
    breakwatch::rng::Generator gen(63, 0);
    for (int trial = 0; trial < 8; ++trial) {
        const auto config = small_config(5);
        const auto z = oracle::step_series(25, 25, 2.0, 0.001, gen);
        const auto tree = breakwatch::edm_detect(z, config, MedianSource::tree);
        const auto exact = breakwatch::edm_detect(z, config, MedianSource::exact);
        CHECK(tree.tau == exact.tau);
        CHECK(exact.tau == 25);
    }
}

TEST_CASE("argmax is invariant under positive affine maps") {
    breakwatch::rng::Generator gen(64, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto config = small_config(4);
        const auto z = oracle::step_series(15, 18, 1.5, 0.4, gen);
        std::vector<double> mapped(z.size());
        const double a = 0.5 + 4.0 * gen.unit();
        const double b = -30.0 + 60.0 * gen.unit();
        for (std::size_t i = 0; i < z.size(); ++i) mapped[i] = a * z[i] + b;
        const auto base = breakwatch::edm_detect(z, config, MedianSource::tree);
        const auto moved = breakwatch::edm_detect(mapped, config, MedianSource::tree);
        CHECK(base.tau == moved.tau);
        CHECK(base.kappa == moved.kappa);
    }
}

TEST_CASE("doubling the series length stays within the quadratic-with-log growth budget") {
    breakwatch::rng::Generator gen(65, 0);
    DetectionConfig config;
    config.delta = 24;

    auto timed = [&](const std::vector<double>& z) {
        std::vector<double> runs;
        for (int r = 0; r < 5; ++r) {
            const auto start = std::chrono::steady_clock::now();
            breakwatch::edm_detect(z, config, MedianSource::tree);
            const auto stop = std::chrono::steady_clock::now();
            runs.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        }
        return breakwatch::median_of(runs);
    };

    const auto z500 = oracle::random_series(500, gen);
    const auto z1000 = oracle::random_series(1000, gen);
    const auto z2000 = oracle::random_series(2000, gen);
    const double t500 = timed(z500);
    const double t1000 = timed(z1000);
    const double t2000 = timed(z2000);
    // O(n^2 log n): doubling n costs 4x plus a log factor; allow generous
    // headroom for timer noise on small absolute times.
    CHECK(t1000 <= 6.0 * t500 + 5.0);
    CHECK(t2000 <= 6.0 * t1000 + 5.0);
}
