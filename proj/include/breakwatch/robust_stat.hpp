#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "breakwatch/config.hpp"
#include "breakwatch/errors.hpp"
#include "breakwatch/interval_tree.hpp"

namespace breakwatch {

// Median with the library-wide convention: even counts average the two middle
// order statistics. Takes its argument by value and sorts it.
double median_of(std::vector<double> values);

// Exact multiset with O(log n) insert, single-element erase and O(1) median,
// implemented as a std::multiset plus an iterator pinned to the lower middle
// element. This is the exact counterpart of the counting tree for sweeps that
// must also shrink their windows.
class RunningMedianMultiset {
   public:
    void insert(double v);
    void erase(double v);  // removes one instance; UnderflowError if absent
    double median() const;
    std::size_t size() const { return values_.size(); }
    void clear() { values_.clear(); }

   private:
    std::multiset<double> values_;
    std::multiset<double>::iterator mid_;  // element of rank ceil(size/2)
};

// Distance multiset for one segment's within-median: all pairs among the
// first delta points, plus every consecutive pair along the whole segment
// (each index pair counted once -- consecutive pairs inside the leading block
// are not duplicated). Growing the segment by one point therefore adds
// exactly one distance. Requires seg.size() >= delta >= 2.
std::vector<double> within_window_distances(const std::vector<double>& seg, std::size_t delta,
                                            double alpha);

// Distance multiset for the between-median: a delta x delta window of cross
// distances. `head` pairs the first delta of A with the first delta of B;
// `tail` pairs the last delta of A with the first delta of B. Requires both
// segments >= delta.
std::vector<double> between_window_distances(const std::vector<double>& a,
                                             const std::vector<double>& b, std::size_t delta,
                                             double alpha, BetweenWindow between);

// Median-robustified divergence 2*med|a-b|^alpha - med|a-a'|^alpha -
// med|b-b'|^alpha with medians over ALL pairwise distances. The reference
// form: quadratic cost, used as the oracle for the windowed variants.
// Requires both segments >= 2.
double e_tilde_exact(const std::vector<double>& a, const std::vector<double>& b, double alpha);

// Same divergence with the three medians taken over the delta-windowed
// multisets above. `source` picks exact medians or the counting-tree
// approximation (tree mode requires all distances in [0, 1], i.e. unit-scaled
// inputs for alpha <= 2).
double e_tilde_windowed(const std::vector<double>& a, const std::vector<double>& b,
                        std::size_t delta, double alpha, BetweenWindow between,
                        MedianSource source, std::size_t tree_depth = 10);

// Scaled divergence nm/(n+m) * e_tilde, the quantity the robust detectors
// maximize over candidate splits.
double q_tilde(std::size_t n, std::size_t m, double e_tilde_value);

// Segment-size prefactor nm/(n+m), shared by every statistic in the library.
inline double segment_prefactor(std::size_t n, std::size_t m) {
    return static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(n + m);
}

// Uniform median-bag interface over the two median sources, used to
// instantiate the detection sweep once per source.
struct TreeMedianBag {
    IntervalTree tree;
    explicit TreeMedianBag(std::size_t depth) : tree(depth) {}
    void insert(double v) { tree.insert(v); }
    void remove(double v) { tree.remove(v); }
    double median() const { return tree.approximate_median(); }
};

struct ExactMedianBag {
    RunningMedianMultiset values;
    explicit ExactMedianBag(std::size_t /*depth*/) {}
    void insert(double v) { values.insert(v); }
    void remove(double v) { values.erase(v); }
    double median() const { return values.median(); }
};

}  // namespace breakwatch
