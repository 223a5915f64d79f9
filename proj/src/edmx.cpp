#include "breakwatch/edmx.hpp"

#include "breakwatch/median_heap.hpp"
#include "breakwatch/robust_stat.hpp"
#include "breakwatch/series.hpp"

namespace breakwatch {

DetectionEstimate edmx_scan(const std::vector<double>& values, const DetectionConfig& config,
                            const CellObserver& observer) {
    config.validate();
    const std::size_t n = values.size();
    const std::size_t delta = config.delta;
    if (n < 2 * delta) throw SeriesTooShortError(n, 2 * delta);
    const ScaledSeries scaled = scale_to_unit(values);
    if (scaled.degenerate) return {delta, 2 * delta, 0.0};
    const std::vector<double>& z = scaled.values;

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

    MedianHeap heaps_a;
    for (std::size_t i = 0; i + 1 < delta; ++i) heaps_a.add(z[i]);
    MedianHeap heaps_b;
    for (std::size_t tau = delta; tau + delta <= n; ++tau) {
        heaps_a.add(z[tau - 1]);
        const double med_a = heaps_a.median();
        heaps_b.clear();
        for (std::size_t j = tau; j < tau + delta; ++j) heaps_b.add(z[j]);
        for (std::size_t kappa = tau + delta;; ++kappa) {
            const double diff = med_a - heaps_b.median();
            const double q = segment_prefactor(tau, kappa - tau) * (2.0 * diff * diff);
            consider(q, tau, kappa);
            if (kappa == n) break;
            heaps_b.add(z[kappa]);
        }
    }
    return best;
}

DetectionEstimate edmx_detect(const std::vector<double>& values, const DetectionConfig& config) {
    return edmx_scan(values, config, {});
}

}  // namespace breakwatch
