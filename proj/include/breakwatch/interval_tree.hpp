#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "breakwatch/errors.hpp"

namespace breakwatch {

// Complete binary counting tree over [0, 1] with 2^depth equal leaves.
// Leaf i (1-based) covers [(i-1)/2^D, i/2^D), the last leaf closed at 1.
// Insert/remove touch one root-to-leaf path; the median query descends once,
// so all operations cost O(depth) independent of the count. The median is
// approximate: when the K-th smallest falls inside a leaf, the leaf midpoint
// is returned, so the error is at most the leaf width 2^-depth.
class IntervalTree {
   public:
    explicit IntervalTree(std::size_t depth)
        : depth_(validated(depth)), leaves_(std::size_t{1} << depth), counts_(2 * leaves_, 0) {}

    std::size_t depth() const { return depth_; }
    std::size_t size() const { return counts_[1]; }

    void insert(double x) {
        for (std::size_t node = leaf_node(x); node >= 1; node >>= 1) ++counts_[node];
    }

    void remove(double x) {
        const std::size_t leaf = leaf_node(x);
        if (counts_[leaf] == 0) throw UnderflowError(x);
        for (std::size_t node = leaf; node >= 1; node >>= 1) --counts_[node];
    }

    // Descends toward the K-th smallest stored value, K = ceil(count / 2).
    // At an internal node with left-subtree count a: a > K continues left,
    // a < K subtracts and continues right. a == K means the halves split
    // exactly at K, and the two-sided weighted midpoint average
    // (a*x + b*y) / (a + b) is returned -- unless the right child is empty,
    // in which case all mass lies left and the descent simply continues there.
    double approximate_median() const {
        if (counts_[1] == 0) throw EmptyMedianError();
        std::size_t k = (counts_[1] + 1) / 2;
        std::size_t node = 1;
        double lo = 0.0;
        double width = 1.0;
        while (node < leaves_) {
            const std::uint32_t a = counts_[2 * node];
            const std::uint32_t b = counts_[2 * node + 1];
            if (a >= k) {
                if (a == k && b > 0) {
                    const double x = lo + 0.25 * width;
                    const double y = lo + 0.75 * width;
                    return (static_cast<double>(a) * x + static_cast<double>(b) * y) /
                           static_cast<double>(a + b);
                }
                node = 2 * node;
            } else {
                k -= a;
                node = 2 * node + 1;
                lo += 0.5 * width;
            }
            width *= 0.5;
        }
        return lo + 0.5 * width;
    }

    // Count stored in the leaf covering x; used by audits.
    std::uint32_t leaf_count(double x) const { return counts_[leaf_node(x)]; }

    void clear() { counts_.assign(counts_.size(), 0); }

   private:
    static std::size_t validated(std::size_t depth) {
        if (depth < 1 || depth > 30) throw InvalidConfigError("tree depth must lie in [1, 30]");
        return depth;
    }

    std::size_t leaf_node(double x) const {
        if (!(x >= 0.0 && x <= 1.0)) throw OutOfRangeError(x);
        std::size_t idx = static_cast<std::size_t>(x * static_cast<double>(leaves_));
        if (idx >= leaves_) idx = leaves_ - 1;  // x == 1.0 belongs to the closed last leaf
        return leaves_ + idx;
    }

    std::size_t depth_;
    std::size_t leaves_;
    std::vector<std::uint32_t> counts_;  // 1-based flat layout: children of i at 2i, 2i+1
};

}  // namespace breakwatch
