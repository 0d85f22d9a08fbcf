// constructions.hpp
// Explicit test configurations: the flat and single-transition competitors,
// the oscillatory curvature ansatz with its closed-form bound and regime
// selection, the sharp-transition u_delta family, and the mollified-step
// probes for the degenerate kappa = 0 / b -> 0 limits.
//
// Corner-bearing profiles are sampled pointwise; u' and h'' are supplied
// analytically per piece and integrated by midpoint quadrature, never by
// spectral differentiation.
#pragma once

#include <functional>
#include <utility>

#include "memblab/energy.hpp"
#include "memblab/grid.hpp"
#include "memblab/potential.hpp"

namespace memblab {

struct Profile {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    std::vector<double> breaks;  // piece boundaries in [0,1); empty = smooth
};

struct HeightProfile {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    std::function<double(double)> second;
    std::vector<double> breaks;
};

struct OscillatoryAnsatz {
    int n = 1;
    double epsilon = 1.0;
    double mu = 0.0;
    SampledField u, h;
    Profile u_prof;
    HeightProfile h_prof;
};

HeightProfile zero_height_profile();

std::pair<SampledField, SampledField> flat(Grid1D g);

// Two-layer trapezoid with layers of width sqrt(b)/2; paired with h = 0 its
// energy is <= (8 + max W) sqrt(b) plus quadrature error. Needs N >= 32/sqrt(b).
Profile single_transition_profile(double b);
SampledField single_transition(double b, Grid1D g);

// Piecewise-quadratic height with oscillating curvature sign and the matched
// square-wave order parameter with 2n transition layers of total length eps.
// mu = lambda (1 - eps/2) / (kappa n^2 + sigma/48). Needs N >= 32 n / eps.
OscillatoryAnsatz oscillatory(int n, double epsilon, const Params& p, Grid1D g);

// max W * eps + 8 b n^2 / eps - 24 lambda^2 (1-eps/2)^2 n^2 / (sigma + 48 kappa n^2)
double ansatz_bound(int n, double epsilon, const Params& p, const DoubleWell& w);

// Case-wise (n, eps) of the supercritical upper-bound proof; kappa > 0 required.
std::pair<int, double> regime_select(const Params& p, const DoubleWell& w);

// Sharp two-interface profile with ramps of width delta at 0 and 1/2
// (half-period antisymmetric, so mean and even Fourier modes vanish).
Profile udelta_profile(double delta);                       // delta in (0, 1/2)
SampledField udelta_sampled(double delta, Grid1D g);         // delta in (0, 1/8], N >= 64/delta

// -8(1/4 - delta/2) - 4 ln(delta / (1/4 + delta/2)); reference value for the
// H^{1/2} double-integral energy of the u_delta family.
double udelta_h12_lower_bound(double delta);

// Two-plateau profile with piecewise-linear mollification ramps of width
// 2 eps centered at 1/4 and 3/4. Needs N >= 64/eps.
Profile mollified_step_profile(double epsilon);
SampledField mollified_step(double epsilon, Grid1D g);      // epsilon in (0, 1/8)

// Energy of a construction from its analytic derivatives: composite Gauss
// rule subordinate to the piece boundaries, ~quad_n nodes total. Exact for
// piecewise-polynomial integrands (polynomial wells); Richardson comparison
// at quad_n vs 2*quad_n estimates the residual for non-polynomial wells.
EnergyBreakdown measured_breakdown(const Profile& u, const HeightProfile& h, const Params& p,
                                   const DoubleWell& w, int quad_n);
EnergyBreakdown measured_breakdown(const OscillatoryAnsatz& a, const Params& p,
                                   const DoubleWell& w, int quad_n);

// kappa = 0 probe: with h = (lambda/sigma) u the energy collapses to
// int W(u_eps) + (1/2)(b - lambda^2/sigma) |u_eps'|^2.
double kappa0_probe_energy(double epsilon, const Params& p, const DoubleWell& w, int quad_n);

// Samples a profile and snaps it into the admissible set tightly enough that
// project_admissible is a no-op.
SampledField sample_admissible(const Profile& prof, Grid1D g);

}  // namespace memblab
