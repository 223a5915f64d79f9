#include "breakwatch/robust_stat.hpp"

#include <algorithm>

#include "breakwatch/energy.hpp"

namespace breakwatch {

double median_of(std::vector<double> values) {
    if (values.empty()) throw EmptyMedianError();
    std::sort(values.begin(), values.end());
    const std::size_t k = values.size() / 2;
    if (values.size() % 2 == 1) return values[k];
    return 0.5 * (values[k - 1] + values[k]);
}

void RunningMedianMultiset::insert(double v) {
    values_.insert(v);
    const std::size_t k = values_.size();
    if (k == 1) {
        mid_ = values_.begin();
        return;
    }
    // mid_ tracks rank ceil(k/2). multiset inserts equal keys at the end of
    // their run, so v == *mid_ lands after mid_ and counts as the right side.
    if (v < *mid_) {
        if (k % 2 == 0) --mid_;
    } else {
        if (k % 2 == 1) ++mid_;
    }
}

void RunningMedianMultiset::erase(double v) {
    auto it = values_.find(v);
    if (it == values_.end()) throw UnderflowError(v);
    const std::size_t k = values_.size();
    if (it == mid_) {
        // find() returns the first element of an equal run, so here mid_ is
        // that first element and nothing equal precedes it.
        auto replacement = mid_;
        if (k % 2 == 1) {
            replacement = (k == 1) ? values_.end() : std::prev(mid_);
        } else {
            replacement = std::next(mid_);
        }
        values_.erase(it);
        mid_ = replacement;
        return;
    }
    // it != mid_ and *mid_ == v can only happen with it before mid_ (first of
    // the equal run), so ordering by value is enough to classify the side.
    if (v <= *mid_) {
        if (k % 2 == 0) ++mid_;
        values_.erase(it);
    } else {
        if (k % 2 == 1) --mid_;
        values_.erase(it);
    }
}

double RunningMedianMultiset::median() const {
    if (values_.empty()) throw EmptyMedianError();
    if (values_.size() % 2 == 1) return *mid_;
    return 0.5 * (*mid_ + *std::next(mid_));
}

std::vector<double> within_window_distances(const std::vector<double>& seg, std::size_t delta,
                                            double alpha) {
    if (delta < 2) throw InvalidConfigError("window width delta must be at least 2");
    if (seg.size() < delta) throw SegmentTooShortError(seg.size(), delta);
    std::vector<double> out;
    out.reserve(delta * (delta - 1) / 2 + seg.size() - delta);
    for (std::size_t i = 0; i + 1 < delta; ++i) {
        for (std::size_t j = i + 1; j < delta; ++j) {
            out.push_back(alpha_distance(seg[i], seg[j], alpha));
        }
    }
    for (std::size_t i = delta - 1; i + 1 < seg.size(); ++i) {
        out.push_back(alpha_distance(seg[i], seg[i + 1], alpha));
    }
    return out;
}

std::vector<double> between_window_distances(const std::vector<double>& a,
                                             const std::vector<double>& b, std::size_t delta,
                                             double alpha, BetweenWindow between) {
    if (delta < 2) throw InvalidConfigError("window width delta must be at least 2");
    if (a.size() < delta) throw SegmentTooShortError(a.size(), delta);
    if (b.size() < delta) throw SegmentTooShortError(b.size(), delta);
    const std::size_t a_start = between == BetweenWindow::head ? 0 : a.size() - delta;
    std::vector<double> out;
    out.reserve(delta * delta);
    for (std::size_t i = a_start; i < a_start + delta; ++i) {
        for (std::size_t j = 0; j < delta; ++j) {
            out.push_back(alpha_distance(a[i], b[j], alpha));
        }
    }
    return out;
}

double e_tilde_exact(const std::vector<double>& a, const std::vector<double>& b, double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw InvalidAlphaError(alpha);
    if (a.size() < 2 || b.size() < 2) throw SampleTooSmallError(a.size(), b.size());
    auto all_within = [alpha](const std::vector<double>& seg) {
        std::vector<double> d;
        d.reserve(seg.size() * (seg.size() - 1) / 2);
        for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
            for (std::size_t j = i + 1; j < seg.size(); ++j) {
                d.push_back(alpha_distance(seg[i], seg[j], alpha));
            }
        }
        return d;
    };
    std::vector<double> between;
    between.reserve(a.size() * b.size());
    for (double av : a) {
        for (double bv : b) between.push_back(alpha_distance(av, bv, alpha));
    }
    return 2.0 * median_of(std::move(between)) - median_of(all_within(a)) -
           median_of(all_within(b));
}

double e_tilde_windowed(const std::vector<double>& a, const std::vector<double>& b,
                        std::size_t delta, double alpha, BetweenWindow between,
                        MedianSource source, std::size_t tree_depth) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw InvalidAlphaError(alpha);
    auto med = [&](std::vector<double>&& d) {
        if (source == MedianSource::exact) return median_of(std::move(d));
        IntervalTree tree(tree_depth);
        for (double v : d) tree.insert(v);
        return tree.approximate_median();
    };
    const double m_ab = med(between_window_distances(a, b, delta, alpha, between));
    const double m_aa = med(within_window_distances(a, delta, alpha));
    const double m_bb = med(within_window_distances(b, delta, alpha));
    return 2.0 * m_ab - m_aa - m_bb;
}

double q_tilde(std::size_t n, std::size_t m, double e_tilde_value) {
    return segment_prefactor(n, m) * e_tilde_value;
}

}  // namespace breakwatch
