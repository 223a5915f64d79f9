#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace breakwatch::rng {

// SplitMix64 finalizer; used to derive well-separated substream seeds from a
// user seed plus a stream index, so replica r of a permutation test depends
// only on (seed, r) and never on evaluation order.
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic generator: the engine's u64 stream is pinned by the standard,
// and the distributions below are hand-rolled because the library-provided
// ones are not bit-reproducible across implementations.
class Generator {
   public:
    explicit Generator(std::uint64_t seed) : engine_(seed) {}
    Generator(std::uint64_t seed, std::uint64_t stream) : engine_(mix(seed, stream)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, n) by rejection; n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    // Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Standard normal via the polar method.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * unit() - 1.0;
            v = 2.0 * unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Fisher-Yates shuffle, in place.
template <typename T>
void shuffle(std::vector<T>& values, Generator& gen) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(gen.below(i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace breakwatch::rng
