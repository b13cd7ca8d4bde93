#pragma once

#include <cstdint>
#include <random>

namespace asa {

// Seeded RNG used everywhere randomness appears. Bounded draws go through
// rejection sampling instead of std::uniform_int_distribution, whose output
// is not bit-stable across standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Uniform in [0, bound). bound must be nonzero.
    uint64_t below(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v = gen_();
        while (v >= limit) v = gen_();
        return v % bound;
    }

    // Uniform in [0, 1).
    double unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 gen_;
};

} // namespace asa
