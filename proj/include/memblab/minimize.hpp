// minimize.hpp
// Constrained minimization of the reduced (h-eliminated) functional over the
// admissible set by projected gradient descent with Armijo backtracking and
// mandatory multi-start from the analytic constructions.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memblab/energy.hpp"
#include "memblab/grid.hpp"
#include "memblab/potential.hpp"

namespace memblab {

struct StartSpec {
    std::string kind;     // flat | single_transition | oscillatory | random
    int n = 1;            // oscillatory half-period count
    double epsilon = 1.0; // oscillatory transition fraction
    uint64_t seed = 0;    // random starts
};

struct MinimizeOptions {
    int grid_n = 1024;
    int max_iters = 600;
    double step_init = 0.0;   // 0 = inverse-Lipschitz guess
    double armijo_c = 1e-4;   // sufficient-decrease fraction, in (0,1)
    double tol_grad = 1e-7;   // projected-gradient L2 norm threshold
    std::vector<StartSpec> starts;  // empty = default multi-start set
    int workers = 1;
    uint64_t seed = 1;
};

struct StartResult {
    std::string descriptor;
    double final_energy = 0.0;
    int iterations = 0;
    bool converged = false;
    bool skipped = false;  // start not representable on this grid
};

struct MinimizeResult {
    double best_energy = 0.0;
    SampledField best_u;
    SampledField best_h;  // optimal_height(best_u)
    std::vector<StartResult> per_start;
    int converged_starts = 0;
};

// L2 gradient of reduced_energy: W'(u) - b u'' - lambda^2 T(u) with the
// Fourier multiplier T = w^2/(sigma + kappa w^2) on mean-free modes.
SampledField gradient_reduced(const SampledField& u, const Params& p, const DoubleWell& w);

// Default start set: flat, single_transition, oscillatory at regime_select
// plus 4 neighboring (n, eps), and 3 seeded random fields.
std::vector<StartSpec> default_starts(const Params& p, const DoubleWell& w, uint64_t seed);

// Requires b > 0 and kappa > 0; degenerate parameters belong to the
// construction probes instead. Per-start energies are monotone; the result
// respects the discrete Young bound (checked, violation throws).
MinimizeResult minimize(const Params& p, const DoubleWell& w, const MinimizeOptions& opts);

}  // namespace memblab
