#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "tara/errors.hpp"

namespace tara {

// Seeded RNG with explicitly written-out transforms. The std:: distribution
// objects are implementation-defined, so none are used here: a given
// (seed, call sequence) produces the same stream on every platform that
// ships a conforming mt19937_64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; never returns 0 (smoothed p-values must stay positive).
    double uniform_open0() { return 1.0 - uniform01(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    int sign() { return (next_u64() & 1u) ? +1 : -1; }

    // Unbiased integer in [0, n) via rejection.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) throw DataError("uniform_int: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Index draw from a normalized weight vector.
    int categorical(std::span<const double> weights) {
        const double u = uniform01();
        double cum = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            cum += weights[i];
            if (u < cum) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;  // guards rounding at u ~ 1
    }

    // Independent substream seed: splitmix64 over the (seed, tag) pair, so
    // experiment cells keyed by tag are reproducible and order-independent.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace tara
