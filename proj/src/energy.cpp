#include "breakwatch/energy.hpp"

#include <algorithm>

#include "breakwatch/errors.hpp"

namespace breakwatch {
namespace {

// Neumaier-compensated accumulator: the pairwise sums below mix O(n^2) terms
// of similar magnitude, and the final statistic is a difference of such sums,
// so naive accumulation error would leak into tight argmax comparisons.
class CompensatedSum {
   public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

   private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double mean_between(const std::vector<double>& x, const std::vector<double>& y, double alpha) {
    CompensatedSum acc;
    for (double xv : x) {
        for (double yv : y) acc.add(alpha_distance(xv, yv, alpha));
    }
    return acc.value() / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

double mean_within(const std::vector<double>& x, double alpha) {
    CompensatedSum acc;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) acc.add(alpha_distance(x[i], x[j], alpha));
    }
    const double pairs = 0.5 * static_cast<double>(x.size()) * static_cast<double>(x.size() - 1);
    return acc.value() / pairs;
}

}  // namespace

double e_hat(const std::vector<double>& x, const std::vector<double>& y, double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw InvalidAlphaError(alpha);
    if (x.size() < 2 || y.size() < 2) throw SampleTooSmallError(x.size(), y.size());
    // Evaluate both argument orders through the same canonical computation so
    // e_hat(x, y) == e_hat(y, x) bit for bit despite compensated accumulation.
    const bool swap = y.size() < x.size() ||
                      (y.size() == x.size() &&
                       std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end()));
    const std::vector<double>& a = swap ? y : x;
    const std::vector<double>& b = swap ? x : y;
    return 2.0 * mean_between(a, b, alpha) - mean_within(a, alpha) - mean_within(b, alpha);
}

double q_hat(const std::vector<double>& x, const std::vector<double>& y, double alpha) {
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(y.size());
    return n * m / (n + m) * e_hat(x, y, alpha);
}

}  // namespace breakwatch
