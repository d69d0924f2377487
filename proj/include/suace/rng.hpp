#pragma once

#include <cmath>
#include <cstdint>

namespace suace::detail {

// SplitMix64. Small, fast, and trivially splittable: hashing (seed, tag)
// pairs gives independent streams, so each synthetic-image feature can draw
// from its own generator and stays stable when other features are toggled.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Derive an independent generator for (seed, tag). Runs the base seed and the
// tag through one scramble round each so adjacent seeds do not give
// correlated streams.
inline SplitMix64 stream(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 mix(seed);
    std::uint64_t a = mix.next();
    SplitMix64 mix2(a ^ (tag * 0x9e3779b97f4a7c15ULL));
    return SplitMix64(mix2.next());
}

// Standard normal draws via the Marsaglia polar method.
// Draw order is part of the generator contract (outputs are frozen in
// tests): u from the first uniform, v from the second, reject when
// s = u*u + v*v >= 1 or s == 0, return u*m first and cache v*m.
class GaussianDraw {
public:
    explicit GaussianDraw(SplitMix64 rng) : rng_(rng) {}

    double next() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * rng_.next_unit() - 1.0;
            v = 2.0 * rng_.next_unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * m;
        has_cached_ = true;
        return u * m;
    }

private:
    SplitMix64 rng_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace suace::detail
