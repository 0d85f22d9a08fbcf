// energy.cpp
#include "memblab/energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace memblab {

namespace {

constexpr double admissibility_tol = 1e-8;

void require_admissible(const SampledField& u) {
    const double box = max_abs(u) - 1.0;
    if (box > admissibility_tol)
        throw std::invalid_argument("evaluate_full: u violates box constraint |u| <= 1 by " +
                                    std::to_string(box));
    const double m = mean(u);
    if (std::fabs(m) > admissibility_tol)
        throw std::invalid_argument("evaluate_full: u violates mean-zero constraint, mean = " +
                                    std::to_string(m));
}

void require_mean_zero_h(const SampledField& h) {
    const double m = mean(h);
    if (std::fabs(m) > admissibility_tol)
        throw std::invalid_argument("evaluate_full: h must have zero mean, mean = " +
                                    std::to_string(m));
}

double omega(int k) { return 2.0 * std::numbers::pi * k; }

}  // namespace

double reduced_kernel(double omega_sq, const Params& p) {
    return omega_sq / (p.sigma + p.kappa * omega_sq);
}

EnergyBreakdown evaluate_full(const SampledField& u, const SampledField& h, const Params& p,
                              const DoubleWell& w) {
    p.validate();
    require_admissible(u);
    require_mean_zero_h(h);
    if (u.size() != h.size())
        throw std::invalid_argument("evaluate_full: u and h must share a grid");

    const SpectralField u_hat = forward_transform(u);
    const SpectralField h_hat = forward_transform(h);
    const SampledField du = inverse_transform(derivative(u_hat, 1));
    const SampledField dh = inverse_transform(derivative(h_hat, 1));
    const SampledField d2h = inverse_transform(derivative(h_hat, 2));

    EnergyBreakdown e;
    SampledField wu(u.grid);
    for (int j = 0; j < u.size(); ++j) wu.values[j] = w.evaluate(u.values[j]);
    e.well_term = integrate(wu);
    e.exchange_term = 0.5 * p.b * l2_norm_sq(du);
    e.tension_term = 0.5 * p.sigma * l2_norm_sq(dh);
    e.bending_term = 0.5 * p.kappa * l2_norm_sq(d2h);
    e.coupling_term = p.lambda * inner(u, d2h);
    e.total = e.well_term + e.exchange_term + e.tension_term + e.bending_term + e.coupling_term;
    return e;
}

SampledField optimal_height(const SampledField& u, const Params& p) {
    p.validate();
    if (p.kappa == 0.0 && p.sigma == 0.0 && p.lambda > 0.0)
        throw std::invalid_argument(
            "optimal_height: kappa = sigma = 0 with lambda > 0 has no minimizer");
    const double m = mean(u);
    if (std::fabs(m) > admissibility_tol)
        throw std::invalid_argument("optimal_height: u must have zero mean, mean = " +
                                    std::to_string(m));
    if (p.lambda == 0.0) return SampledField(u.grid, 0.0);
    SpectralField h_hat = forward_transform(u);
    const int n = h_hat.n;
    for (int idx = 0; idx < n; ++idx) {
        const int k = h_hat.freq_of_index(idx);
        if (k == 0) {
            h_hat.coeffs[idx] = cplx(0.0, 0.0);
            continue;
        }
        const double w2 = omega(k) * omega(k);
        h_hat.coeffs[idx] *= p.lambda / (p.kappa * w2 + p.sigma);
    }
    return inverse_transform(h_hat);
}

double reduced_energy(const SampledField& u, const Params& p, const DoubleWell& w) {
    p.validate();
    if (p.kappa == 0.0 && p.sigma == 0.0 && p.lambda > 0.0)
        throw std::invalid_argument(
            "reduced_energy: kappa = sigma = 0 with lambda > 0 has no minimizer");
    const SpectralField u_hat = forward_transform(u);
    double well = 0.0;
    for (double v : u.values) well += w.evaluate(v);
    well /= u.size();
    double exchange = 0.0, nonlocal = 0.0;
    for (int idx = 0; idx < u_hat.n; ++idx) {
        const int k = u_hat.freq_of_index(idx);
        if (k == 0) continue;
        const double w2 = omega(k) * omega(k);
        const double a2 = std::norm(u_hat.coeffs[idx]);
        exchange += w2 * a2;
        nonlocal += reduced_kernel(w2, p) * a2;
    }
    return well + 0.5 * p.b * exchange - 0.5 * p.lambda * p.lambda * nonlocal;
}

double modica_mortola(const SampledField& u, double delta, const DoubleWell& w) {
    return modica_mortola(u, forward_transform(u), delta, w);
}

double modica_mortola(const SampledField& u, const SpectralField& u_hat, double delta,
                      const DoubleWell& w) {
    if (!(delta > 0.0)) throw std::invalid_argument("modica_mortola: delta must be positive");
    double well = 0.0;
    for (double v : u.values) well += w.evaluate(v);
    well /= u.size();
    return well / delta + delta * h1_seminorm_sq_physical(u_hat);
}

double h1_seminorm_sq_physical(const SpectralField& u_hat) {
    double acc = 0.0;
    for (int idx = 0; idx < u_hat.n; ++idx) {
        const int k = u_hat.freq_of_index(idx);
        if (k == 0) continue;
        acc += omega(k) * omega(k) * std::norm(u_hat.coeffs[idx]);
    }
    return acc;
}

}  // namespace memblab
