// rng.cpp
#include "memblab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace memblab {

double Rng::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

int Rng::uniform_int(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
}

SampledField random_band_limited(Grid1D g, int max_mode, double amplitude, Rng& rng) {
    if (max_mode < 1 || max_mode >= g.n_samples / 2)
        throw std::invalid_argument("random_band_limited: max_mode out of range");
    std::vector<double> ac(static_cast<size_t>(max_mode) + 1, 0.0);
    std::vector<double> as(static_cast<size_t>(max_mode) + 1, 0.0);
    for (int k = 1; k <= max_mode; ++k) {
        ac[static_cast<size_t>(k)] = rng.uniform(-amplitude, amplitude);
        as[static_cast<size_t>(k)] = rng.uniform(-amplitude, amplitude);
    }
    SampledField u(g);
    for (int j = 0; j < g.n_samples; ++j) {
        const double x = g.point(j);
        double v = 0.0;
        for (int k = 1; k <= max_mode; ++k) {
            const double ph = 2.0 * std::numbers::pi * k * x;
            v += ac[static_cast<size_t>(k)] * std::cos(ph) + as[static_cast<size_t>(k)] * std::sin(ph);
        }
        u.values[static_cast<size_t>(j)] = v;
    }
    return u;
}

SampledField random_admissible(Grid1D g, int max_mode, Rng& rng) {
    SampledField u = random_band_limited(g, max_mode, 0.8 / max_mode, rng);
    return project_admissible(u, 1e-12, 500).field;
}

SampledField random_mean_zero(Grid1D g, int max_mode, double amplitude, Rng& rng) {
    return random_band_limited(g, max_mode, amplitude, rng);
}

}  // namespace memblab
