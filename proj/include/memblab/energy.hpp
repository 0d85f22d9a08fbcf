// energy.hpp
// The coupled functional F(u,h) = int W(u) + b/2|u'|^2 + sigma/2|h'|^2
// + kappa/2|h''|^2 + Lambda u h'', its exact per-mode h-elimination, the
// reduced nonlocal functional, and the Modica-Mortola energy.
#pragma once

#include "memblab/grid.hpp"
#include "memblab/potential.hpp"
#include "memblab/spectral.hpp"

namespace memblab {

struct EnergyBreakdown {
    double well_term = 0.0;      // int W(u)
    double exchange_term = 0.0;  // (b/2) int |u'|^2
    double tension_term = 0.0;   // (sigma/2) int |h'|^2
    double bending_term = 0.0;   // (kappa/2) int |h''|^2
    double coupling_term = 0.0;  // Lambda int u h''
    double total = 0.0;
};

// Spectral derivatives + rectangle quadrature. Rejects non-admissible u
// (box/mean within 1e-8) and h with nonzero mean, naming the violation.
EnergyBreakdown evaluate_full(const SampledField& u, const SampledField& h, const Params& p,
                              const DoubleWell& w);

// Exact minimizer of h -> F(u,h) over mean-zero periodic h:
// h_hat_k = Lambda u_hat_k / (kappa w_k^2 + sigma), w_k = 2 pi k, h_hat_0 = 0.
// Requires kappa > 0 or sigma > 0 when lambda > 0 (no minimizer otherwise).
SampledField optimal_height(const SampledField& u, const Params& p);

// int (W(u) + b/2 |u'|^2) - (Lambda^2/2) sum_{k!=0} w_k^2/(sigma+kappa w_k^2) |u_hat_k|^2.
// Agrees with evaluate_full(u, optimal_height(u,p), p, w).total; the agreement
// is a tested invariant, not an assumption.
double reduced_energy(const SampledField& u, const Params& p, const DoubleWell& w);

// Kernel value w^2/(sigma + kappa w^2) used by the reduced functional and its
// gradient; mode 0 is excluded by the callers.
double reduced_kernel(double omega_sq, const Params& p);

// int ((1/delta) W(u) + delta |u'|^2), delta > 0.
double modica_mortola(const SampledField& u, double delta, const DoubleWell& w);

// Same with precomputed spectral data (saves transforms in inner loops).
double modica_mortola(const SampledField& u, const SpectralField& u_hat, double delta,
                      const DoubleWell& w);

// Discrete |u|_{H^1}^2 with physical frequencies: sum w_k^2 |u_hat_k|^2.
double h1_seminorm_sq_physical(const SpectralField& u_hat);

}  // namespace memblab
