#pragma once
#include <cmath>
#include <cstdint>

namespace fedgbdt {

// splitmix64 (Steele, Lea, Flood; public-domain reference constants).
// Every stochastic component in the project draws from this generator so
// that runs are reproducible bit-for-bit from a 64-bit seed, independent
// of platform or standard-library version.
inline uint64_t splitmix64_next(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// One-shot mix of a single word; used for seed derivation.
inline uint64_t mix64(uint64_t x) {
    uint64_t s = x;
    return splitmix64_next(s);
}

// Derives an independent substream seed from (seed, tag). Substreams let
// per-feature / per-participant work run in parallel while staying
// deterministic regardless of scheduling.
inline uint64_t derive_seed(uint64_t seed, uint64_t tag) {
    return mix64(seed ^ mix64(tag + 0x9E3779B97F4A7C15ull));
}

inline uint64_t derive_seed(uint64_t seed, uint64_t tag1, uint64_t tag2) {
    return derive_seed(derive_seed(seed, tag1), tag2);
}

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() { return splitmix64_next(state_); }

    // Uniform double in [0, 1): top 53 bits scaled by 2^-53.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased integer in [0, bound) by rejection: draw 64-bit words,
    // reject values >= floor(2^64 / bound) * bound, return word % bound.
    uint64_t uniform_int(uint64_t bound) {
        const uint64_t limit = bound ? (~0ull - (~0ull % bound)) : 0;
        for (;;) {
            uint64_t w = next_u64();
            if (w < limit) return w % bound;
        }
    }

    // Standard normal via Box-Muller on two uniform draws; second value
    // of each pair is cached. u1 is nudged away from 0 so log() is finite.
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_double();
        double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

private:
    uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace fedgbdt
