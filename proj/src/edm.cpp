#include "breakwatch/edm.hpp"

#include "breakwatch/energy.hpp"
#include "breakwatch/series.hpp"

namespace breakwatch {

template <class Bag>
double EdmSweep<Bag>::dist(std::size_t i, std::size_t j) const {
    return alpha_distance(z_[i], z_[j], alpha_);
}

template <class Bag>
EdmSweep<Bag>::EdmSweep(const std::vector<double>& scaled, const DetectionConfig& config)
    : z_(scaled),
      alpha_(config.alpha),
      delta_(config.delta),
      n_(scaled.size()),
      between_(config.between),
      tau_(config.delta),
      kappa_(2 * config.delta),
      within_a_(config.tree_depth),
      within_b_(config.tree_depth),
      between_bag_(config.tree_depth) {
    if (n_ < 2 * delta_) throw SeriesTooShortError(n_, 2 * delta_);
    // A = z[0..delta), B = z[delta..2*delta): both exactly one leading block,
    // whose pair set already contains every consecutive pair.
    for (std::size_t i = 0; i + 1 < delta_; ++i) {
        for (std::size_t j = i + 1; j < delta_; ++j) {
            within_a_.insert(dist(i, j));
            within_b_.insert(dist(delta_ + i, delta_ + j));
        }
    }
    // At tau = delta the tail window of A coincides with its head window.
    for (std::size_t i = 0; i < delta_; ++i) {
        for (std::size_t j = delta_; j < 2 * delta_; ++j) between_bag_.insert(dist(i, j));
    }
}

template <class Bag>
void EdmSweep<Bag>::step_forward() {
    // B gains z[kappa_] (1-based Z_{kappa+1}): one new consecutive pair. The
    // new pair's right index lies beyond B's leading block, so no dedupe.
    within_b_.insert(dist(kappa_ - 1, kappa_));
    ++kappa_;
}

template <class Bag>
void EdmSweep<Bag>::step_backward() {
    --kappa_;
    within_b_.remove(dist(kappa_ - 1, kappa_));
}

template <class Bag>
void EdmSweep<Bag>::advance_tau() {
    const std::size_t t = tau_;  // 1-based; z_[t] is the migrating point Z_{t+1}
    // Within-A: A gains Z_{t+1}, contributing its consecutive pair only.
    within_a_.insert(dist(t - 1, t));
    // Within-B: the head Z_{t+1} leaves, so every leading-block pair that
    // involved it goes; the block slides to cover Z_{t+2}..Z_{t+delta+1},
    // whose pairs are all present already except those ending at the new
    // block edge Z_{t+delta+1} -- and of those, the consecutive pair
    // (Z_{t+delta}, Z_{t+delta+1}) is already in the bag too.
    for (std::size_t j = t + 1; j < t + delta_; ++j) within_b_.remove(dist(t, j));
    for (std::size_t i = t + 1; i + 1 < t + delta_; ++i) within_b_.insert(dist(i, t + delta_));
    // Between window: both sides shift one step right.
    if (between_ == BetweenWindow::tail) {
        for (std::size_t j = t; j < t + delta_; ++j) between_bag_.remove(dist(t - delta_, j));
        for (std::size_t i = t - delta_ + 1; i < t; ++i) between_bag_.remove(dist(i, t));
        for (std::size_t j = t + 1; j <= t + delta_; ++j) between_bag_.insert(dist(t, j));
        for (std::size_t i = t - delta_ + 1; i < t; ++i) between_bag_.insert(dist(i, t + delta_));
    } else {
        for (std::size_t i = 0; i < delta_; ++i) {
            between_bag_.remove(dist(i, t));
            between_bag_.insert(dist(i, t + delta_));
        }
    }
    ++tau_;
}

template <class Bag>
double EdmSweep<Bag>::statistic() const {
    return segment_prefactor(tau_, kappa_ - tau_) *
           (2.0 * between_bag_.median() - within_a_.median() - within_b_.median());
}

template class EdmSweep<TreeMedianBag>;
template class EdmSweep<ExactMedianBag>;

namespace {

struct ArgmaxTracker {
    DetectionEstimate best;
    bool any = false;

    void consider(double q, std::size_t tau, std::size_t kappa) {
        if (!any || q > best.statistic ||
            (q == best.statistic &&
             (tau < best.tau || (tau == best.tau && kappa < best.kappa)))) {
            best = {tau, kappa, q};
            any = true;
        }
    }
};

template <class Bag>
DetectionEstimate run_sweep(const std::vector<double>& scaled, const DetectionConfig& config,
                            const CellObserver& observer) {
    const std::size_t n = scaled.size();
    const std::size_t delta = config.delta;
    EdmSweep<Bag> sweep(scaled, config);
    ArgmaxTracker tracker;
    auto evaluate = [&] {
        const double q = sweep.statistic();
        if (observer) observer(sweep.tau(), sweep.kappa(), q);
        tracker.consider(q, sweep.tau(), sweep.kappa());
    };
    evaluate();  // (delta, 2*delta)
    bool forward_row = true;
    for (;;) {
        if (forward_row) {
            while (sweep.kappa() < n) {
                sweep.step_forward();
                evaluate();
            }
        } else {
            while (sweep.kappa() > sweep.tau() + delta) {
                sweep.step_backward();
                evaluate();
            }
        }
        if (sweep.tau() == n - delta) break;
        if (sweep.kappa() == sweep.tau() + delta) {
            // Backward rows end on the row minimum; make room so B keeps a
            // full leading window when its head departs. The cell this lands
            // on was already evaluated within this row.
            sweep.step_forward();
        }
        sweep.advance_tau();
        evaluate();  // row minimum (tau, tau + delta) or row maximum (tau, n)
        forward_row = !forward_row;
    }
    return tracker.best;
}

}  // namespace

DetectionEstimate edm_scan(const std::vector<double>& values, const DetectionConfig& config,
                           MedianSource source, const CellObserver& observer) {
    config.validate();
    if (values.size() < 2 * config.delta) {
        throw SeriesTooShortError(values.size(), 2 * config.delta);
    }
    const ScaledSeries scaled = scale_to_unit(values);
    if (scaled.degenerate) return {config.delta, 2 * config.delta, 0.0};
    if (source == MedianSource::exact) {
        return run_sweep<ExactMedianBag>(scaled.values, config, observer);
    }
    return run_sweep<TreeMedianBag>(scaled.values, config, observer);
}

DetectionEstimate edm_detect(const std::vector<double>& values, const DetectionConfig& config,
                             MedianSource source) {
    return edm_scan(values, config, source, {});
}

}  // namespace breakwatch
