#pragma once

#include <cstdint>

namespace maplan {

// SplitMix64. Used everywhere randomness is needed so that seeded runs are
// reproducible across platforms and standard libraries (std::uniform_*
// distributions are not portable).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n must be positive. Multiply-shift bounding keeps
    // the draw sequence independent of the bound's bit width.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<uint64_t>(n))); }

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

// Stateless mix of a seed with a stream index; bijective in the sum, so
// distinct indices under one base seed never collide.
inline uint64_t derive_seed(uint64_t base, uint64_t index) {
    Rng r(base + index);
    return r.next();
}

}  // namespace maplan
