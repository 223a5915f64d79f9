#include "breakwatch/sigtest.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "breakwatch/baseline.hpp"
#include "breakwatch/edm.hpp"
#include "breakwatch/edmx.hpp"
#include "breakwatch/rng.hpp"

namespace breakwatch {
namespace {

std::size_t worker_cap() {
    std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BREAKWATCH_THREADS")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end != env && parsed >= 1) cap = static_cast<std::size_t>(parsed);
    }
    return cap;
}

}  // namespace

double p_value_from(double q_observed, const std::vector<double>& q_permuted) {
    std::size_t exceed = 0;
    for (double q : q_permuted) {
        if (q >= q_observed) ++exceed;
    }
    return static_cast<double>(exceed) / static_cast<double>(q_permuted.size() + 1);
}

DetectionEstimate run_detector(Method method, const std::vector<double>& values,
                               const DetectionConfig& config) {
    switch (method) {
        case Method::edm: return edm_detect(values, config);
        case Method::edmx: return edmx_detect(values, config);
        case Method::edivisive: return edivisive_detect(values, config);
    }
    return edm_detect(values, config);
}

PermutationResult permutation_test(const std::vector<double>& values, Method method,
                                   const DetectionConfig& config) {
    PermutationResult result;
    result.permutations = config.permutations;
    result.seed = config.seed;
    result.q_observed = run_detector(method, values, config).statistic;
    result.q_permuted.assign(config.permutations, 0.0);

    const std::size_t R = config.permutations;
    if (R > 0) {
        const std::size_t workers = std::min(worker_cap(), R);
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto run_range = [&](std::size_t begin, std::size_t end) {
            try {
                std::vector<double> permuted;
                for (std::size_t r = begin; r < end; ++r) {
                    permuted = values;
                    rng::Generator gen(config.seed, r);
                    rng::shuffle(permuted, gen);
                    result.q_permuted[r] = run_detector(method, permuted, config).statistic;
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        };
        if (workers == 1) {
            run_range(0, R);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                const std::size_t begin = R * w / workers;
                const std::size_t end = R * (w + 1) / workers;
                pool.emplace_back(run_range, begin, end);
            }
            for (auto& t : pool) t.join();
        }
        if (failure) std::rethrow_exception(failure);
    }
    result.p_value = p_value_from(result.q_observed, result.q_permuted);
    return result;
}

BreakoutReport detect_with_significance(const std::vector<double>& values, Method method,
                                        const DetectionConfig& config) {
    const DetectionEstimate estimate = run_detector(method, values, config);
    const PermutationResult perm = permutation_test(values, method, config);
    BreakoutReport report;
    report.method = method;
    report.tau_hat = estimate.tau;
    report.kappa_hat = estimate.kappa;
    report.statistic = estimate.statistic;
    report.p_value = perm.p_value;
    report.significant = perm.p_value < config.level;
    return report;
}

}  // namespace breakwatch
