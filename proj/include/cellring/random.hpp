#pragma once

#include <cstdint>
#include <random>

namespace cellring {

/// 64-bit Mersenne Twister with a portable uniform mapping, so that sampled
/// values depend only on the seed and not on the standard library vendor.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform on the open interval (lo, hi).
    double uniform_open(double lo, double hi) {
        for (;;) {
            const double v = uniform(lo, hi);
            if (v > lo && v < hi) return v;
        }
    }

    /// Uniform integer on [lo, hi].
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo + 1;
        const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
        for (;;) {
            const std::uint64_t v = engine_();
            if (span == 0) return v;
            if (v < limit) return lo + v % span;
        }
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Derives an independent stream seed for item `index` of a run seeded with `seed`.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace cellring
