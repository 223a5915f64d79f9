#pragma once

#include <functional>
#include <vector>

#include "breakwatch/config.hpp"
#include "breakwatch/robust_stat.hpp"

namespace breakwatch {

// Invoked at every evaluated (tau, kappa) cell with the statistic computed
// there; lets tests audit the whole sweep surface against brute force.
using CellObserver = std::function<void(std::size_t tau, std::size_t kappa, double q)>;

// Incremental sweep state over the candidate grid delta <= tau,
// tau + delta <= kappa <= n (tau = last index of A, kappa = last index of B,
// 1-based). Holds three median bags: within-A window, within-B window and the
// between window. Rows are walked boustrophedon-style so the within-B bag is
// reused across every cell: step_forward/step_backward move kappa by one
// (one bag update each), advance_tau slides both windows past the point that
// migrates from B to A (O(delta) bag updates).
//
// Bag must provide insert(double), remove(double), median().
template <class Bag>
class EdmSweep {
   public:
    // `scaled` must outlive the sweep; values are expected in [0, 1] when the
    // bag is tree-backed. Seeds the state at (delta, 2*delta).
    EdmSweep(const std::vector<double>& scaled, const DetectionConfig& config);

    std::size_t tau() const { return tau_; }
    std::size_t kappa() const { return kappa_; }

    void step_forward();   // kappa -> kappa + 1; requires kappa < n
    void step_backward();  // kappa -> kappa - 1; requires kappa > tau + delta
    // tau -> tau + 1; requires tau + delta + 1 <= kappa (so B keeps a full
    // leading window after losing its head) and tau < n - delta.
    void advance_tau();

    // Robust statistic at the current cell:
    // prefactor * (2*med_between - med_within_A - med_within_B).
    double statistic() const;

   private:
    const std::vector<double>& z_;
    double alpha_;
    std::size_t delta_;
    std::size_t n_;
    BetweenWindow between_;
    std::size_t tau_;
    std::size_t kappa_;
    Bag within_a_;
    Bag within_b_;
    Bag between_bag_;

    double dist(std::size_t i, std::size_t j) const;  // 0-based element indices
};

extern template class EdmSweep<TreeMedianBag>;
extern template class EdmSweep<ExactMedianBag>;

// Argmax of the robust statistic over the full candidate grid, ties broken
// toward the smallest tau then smallest kappa. Scales values to [0, 1] first;
// a constant series short-circuits to (delta, 2*delta, 0). Throws
// SeriesTooShortError when n < 2*delta.
DetectionEstimate edm_detect(const std::vector<double>& values, const DetectionConfig& config,
                             MedianSource source = MedianSource::tree);

// Same sweep with a per-cell observer (pass nullptr-equivalent {} to disable).
DetectionEstimate edm_scan(const std::vector<double>& values, const DetectionConfig& config,
                           MedianSource source, const CellObserver& observer);

}  // namespace breakwatch
