#pragma once

#include <cstdint>
#include <vector>

#include "idalg/scalar.hpp"

namespace idalg {

// splitmix64: tiny, well mixed, and fully deterministic across platforms —
// std::mt19937 distributions are not guaranteed bit-stable, these are.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    int range(int lo, int hi) { return lo + (int)below((uint64_t)(hi - lo + 1)); }

    bool chance(int num, int den) { return below((uint64_t)den) < (uint64_t)num; }

    // small nonzero rational, numerator in [-4,4]\{0}, denominator in [1,3]
    Scalar small_scalar() {
        int num = 0;
        while (num == 0) num = range(-4, 4);
        return Scalar(num, range(1, 3));
    }
};

// per-case stream so failures replay independently of how many draws
// earlier cases consumed
inline uint64_t case_seed(uint64_t seed, uint64_t index) {
    Rng r(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
    r.next();
    return r.next();
}

} // namespace idalg
