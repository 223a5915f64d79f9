#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace breakwatch {

enum class Method { edm, edmx, edivisive };

// Which cross-segment distance window feeds the between-segment median:
// `head` pairs the first delta points of A with the first delta of B;
// `tail` (default) pairs the last delta of A with the first delta of B,
// keeping the window adjacent to the candidate breakout.
enum class BetweenWindow { head, tail };

// How windowed medians are computed: `tree` uses the approximate counting
// tree (production path), `exact` maintains true medians (oracle path).
enum class MedianSource { tree, exact };

std::string to_string(Method m);
std::string to_string(BetweenWindow w);
std::string to_string(MedianSource s);
std::optional<Method> method_from_string(const std::string& name);
std::optional<BetweenWindow> between_from_string(const std::string& name);
std::optional<MedianSource> source_from_string(const std::string& name);

struct DetectionConfig {
    double alpha = 2.0;                           // distance exponent, in (0, 2]
    std::size_t delta = 24;                       // minimum segment size / window width, >= 2
    std::size_t tree_depth = 10;                  // counting-tree depth D, >= 1
    BetweenWindow between = BetweenWindow::tail;  // cross-window selection
    std::size_t permutations = 199;               // significance-test replica count R
    double level = 0.05;                          // significance level, in (0, 1)
    std::uint64_t seed = 0;                       // RNG seed for permutations / synthesis

    // Throws InvalidAlphaError or InvalidConfigError.
    void validate() const;
};

// Argmax location and statistic value produced by a detector sweep.
// tau is the last index of the left segment A = Z[1..tau]; kappa is the last
// index of the right segment B = Z[tau+1..kappa]. Both 1-based.
struct DetectionEstimate {
    std::size_t tau = 0;
    std::size_t kappa = 0;
    double statistic = 0.0;
};

// Full detection outcome as reported externally.
struct BreakoutReport {
    Method method = Method::edm;
    std::optional<std::size_t> tau_hat;    // 1-based; absent only when no estimate exists
    std::optional<std::size_t> kappa_hat;  // 1-based
    double statistic = 0.0;
    double p_value = 1.0;
    bool significant = false;  // p_value < level
};

}  // namespace breakwatch
