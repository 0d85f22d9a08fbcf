// rng.hpp
// Deterministic splitmix64 generator and random admissible field builders.
// Outputs depend only on the seed, never on library or platform state, so
// sweep reruns are bit-identical.
#pragma once

#include <cstdint>

#include "memblab/grid.hpp"

namespace memblab {

struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next_u64() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double log_uniform(double lo, double hi);
    int uniform_int(int lo, int hi);  // inclusive bounds
};

// Mean-zero trigonometric polynomial with modes 1..max_mode and coefficients
// uniform in [-amplitude, amplitude].
SampledField random_band_limited(Grid1D g, int max_mode, double amplitude, Rng& rng);

// Band-limited field pushed into the admissible set (box + mean zero).
SampledField random_admissible(Grid1D g, int max_mode, Rng& rng);

// Mean-zero field without the box constraint (for height profiles h).
SampledField random_mean_zero(Grid1D g, int max_mode, double amplitude, Rng& rng);

}  // namespace memblab
