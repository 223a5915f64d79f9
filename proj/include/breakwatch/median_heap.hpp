#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "breakwatch/errors.hpp"

namespace breakwatch {

// Exact running median over a growing multiset: a max-heap holds the lower
// half, a min-heap the upper half, sizes kept within one of each other with
// the lower heap absorbing the odd element. add() is O(log n); median() is
// O(1): the lower top for odd counts, the mean of the two tops for even.
// Removal is deliberately unsupported -- the sweeps that use this structure
// only ever grow their segments.
class MedianHeap {
   public:
    void add(double v) {
        if (lower_.empty() || v <= lower_.front()) {
            lower_.push_back(v);
            std::push_heap(lower_.begin(), lower_.end());
        } else {
            upper_.push_back(v);
            std::push_heap(upper_.begin(), upper_.end(), std::greater<>());
        }
        if (lower_.size() > upper_.size() + 1) {
            std::pop_heap(lower_.begin(), lower_.end());
            upper_.push_back(lower_.back());
            lower_.pop_back();
            std::push_heap(upper_.begin(), upper_.end(), std::greater<>());
        } else if (upper_.size() > lower_.size()) {
            std::pop_heap(upper_.begin(), upper_.end(), std::greater<>());
            lower_.push_back(upper_.back());
            upper_.pop_back();
            std::push_heap(lower_.begin(), lower_.end());
        }
    }

    double median() const {
        if (lower_.empty()) throw EmptyMedianError();
        if (lower_.size() > upper_.size()) return lower_.front();
        return 0.5 * (lower_.front() + upper_.front());
    }

    std::size_t size() const { return lower_.size() + upper_.size(); }

    void clear() {
        lower_.clear();
        upper_.clear();
    }

    // Underlying halves, exposed so tests can audit the heap invariants.
    const std::vector<double>& lower_half() const { return lower_; }
    const std::vector<double>& upper_half() const { return upper_; }

   private:
    std::vector<double> lower_;  // max-heap
    std::vector<double> upper_;  // min-heap
};

}  // namespace breakwatch
