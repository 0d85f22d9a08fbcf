// minimize.cpp
#include "memblab/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "memblab/constructions.hpp"
#include "memblab/rng.hpp"
#include "memblab/spectral.hpp"

namespace memblab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct ReducedProblem {
    const Params* p;
    const DoubleWell* w;
    Grid1D g;
    std::vector<double> quad_mult;  // b w_k^2 - lambda^2 kernel_k per DFT index, 0 at k=0

    ReducedProblem(const Params& params, const DoubleWell& well, Grid1D grid)
        : p(&params), w(&well), g(grid) {
        const int n = g.n_samples;
        quad_mult.assign(static_cast<size_t>(n), 0.0);
        for (int idx = 0; idx < n; ++idx) {
            int k = idx <= n / 2 ? idx : idx - n;
            if (k == 0) continue;
            const double w2 = two_pi * k * two_pi * k;
            quad_mult[static_cast<size_t>(idx)] =
                p->b * w2 - p->lambda * p->lambda * reduced_kernel(w2, *p);
        }
    }

    double energy(const SampledField& u, const SpectralField& u_hat) const {
        double well = 0.0;
        for (double v : u.values) well += w->evaluate(v);
        well /= u.size();
        double quad = 0.0;
        for (int idx = 0; idx < u_hat.n; ++idx)
            quad += quad_mult[static_cast<size_t>(idx)] * std::norm(u_hat.coeffs[static_cast<size_t>(idx)]);
        return well + 0.5 * quad;
    }

    double energy(const SampledField& u) const { return energy(u, forward_transform(u)); }

    SampledField gradient(const SampledField& u, const SpectralField& u_hat) const {
        SpectralField gq = u_hat;
        for (int idx = 0; idx < gq.n; ++idx)
            gq.coeffs[static_cast<size_t>(idx)] *= quad_mult[static_cast<size_t>(idx)];
        SampledField grad = inverse_transform(gq);
        for (int j = 0; j < u.size(); ++j) grad.values[static_cast<size_t>(j)] += w->derivative(u.values[static_cast<size_t>(j)]);
        return grad;
    }

    double lipschitz_estimate() const {
        double wpp = 0.0;
        const double h = 1e-4;
        for (int i = 0; i <= 200; ++i) {
            const double t = -1.0 + 2.0 * i / 200.0;
            const double lo = std::max(-1.0, t - h), hi = std::min(1.0, t + h);
            wpp = std::max(wpp, std::fabs(w->derivative(hi) - w->derivative(lo)) / (hi - lo));
        }
        double mult = 0.0;
        for (double m : quad_mult) mult = std::max(mult, std::fabs(m));
        return wpp + mult;
    }
};

struct DescentOutcome {
    SampledField u;
    double energy = 0.0;
    int iterations = 0;
    bool converged = false;
};

DescentOutcome run_descent(const ReducedProblem& prob, SampledField u, const MinimizeOptions& opts) {
    const double lip = prob.lipschitz_estimate();
    const double t0 = opts.step_init > 0.0 ? opts.step_init : 1.0 / std::max(lip, 1e-12);
    const double t_cap = 1e6 * t0;
    double t = t0;
    SpectralField u_hat = forward_transform(u);
    double e = prob.energy(u, u_hat);
    DescentOutcome out;
    int iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        const SampledField grad = prob.gradient(u, u_hat);
        // stationarity measured at the fixed probe step 1/L: larger accepted
        // steps would shrink the projected-gradient norm artificially
        {
            SampledField probe = u;
            for (int j = 0; j < u.size(); ++j)
                probe.values[static_cast<size_t>(j)] -= t0 * grad.values[static_cast<size_t>(j)];
            probe = project_admissible(probe, 1e-12, 500).field;
            const double pg_norm = std::sqrt(l2_norm_sq(probe - u)) / t0;
            if (pg_norm < opts.tol_grad) {
                out.converged = true;
                break;
            }
        }
        SampledField u_next = u;
        double e_next = e;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            SampledField trial = u;
            for (int j = 0; j < u.size(); ++j) trial.values[static_cast<size_t>(j)] -= t * grad.values[static_cast<size_t>(j)];
            trial = project_admissible(trial, 1e-12, 500).field;
            const SpectralField trial_hat = forward_transform(trial);
            const double e_trial = prob.energy(trial, trial_hat);
            const double pred = inner(grad, u - trial);  // >= 0 for convex projections
            if (e_trial <= e - opts.armijo_c * pred + 1e-14 * (1.0 + std::fabs(e))) {
                u_next = std::move(trial);
                u_hat = trial_hat;
                e_next = e_trial;
                accepted = true;
                break;
            }
            t *= 0.5;
            if (t < 1e-18 * t0) break;
        }
        if (!accepted) break;
        if (e_next > e + 1e-12 * (1.0 + std::fabs(e)))
            throw std::runtime_error("minimize: energy increased along an accepted step");
        u = std::move(u_next);
        e = e_next;
        t = std::min(t * 1.5, t_cap);
    }
    out.u = std::move(u);
    out.energy = e;
    out.iterations = iter;
    return out;
}

std::string describe(const StartSpec& s) {
    if (s.kind == "oscillatory")
        return "oscillatory(n=" + std::to_string(s.n) + ",eps=" + std::to_string(s.epsilon) + ")";
    if (s.kind == "random") return "random(seed=" + std::to_string(s.seed) + ")";
    return s.kind;
}

}  // namespace

SampledField gradient_reduced(const SampledField& u, const Params& p, const DoubleWell& w) {
    p.validate();
    ReducedProblem prob(p, w, u.grid);
    return prob.gradient(u, forward_transform(u));
}

std::vector<StartSpec> default_starts(const Params& p, const DoubleWell& w, uint64_t seed) {
    std::vector<StartSpec> starts;
    starts.push_back({"flat", 1, 1.0, 0});
    starts.push_back({"single_transition", 1, 1.0, 0});
    const auto [n_star, eps_star] = regime_select(p, w);
    starts.push_back({"oscillatory", n_star, eps_star, 0});
    starts.push_back({"oscillatory", std::max(1, n_star - 1), eps_star, 0});
    starts.push_back({"oscillatory", n_star + 1, eps_star, 0});
    starts.push_back({"oscillatory", n_star, std::max(1e-3, 0.5 * eps_star), 0});
    starts.push_back({"oscillatory", n_star, std::min(1.0, 2.0 * eps_star), 0});
    for (uint64_t i = 1; i <= 3; ++i) starts.push_back({"random", 1, 1.0, seed + i});
    return starts;
}

MinimizeResult minimize(const Params& p, const DoubleWell& w, const MinimizeOptions& opts) {
    p.validate();
    if (!(p.b > 0.0) || !(p.kappa > 0.0))
        throw std::invalid_argument(
            "minimize: requires b > 0 and kappa > 0; use the construction probes for "
            "degenerate parameters");
    const Grid1D g(opts.grid_n);
    const ReducedProblem prob(p, w, g);
    std::vector<StartSpec> starts = opts.starts.empty() ? default_starts(p, w, opts.seed) : opts.starts;

    std::vector<StartResult> results(starts.size());
    std::vector<SampledField> finals(starts.size());

    auto run_one = [&](size_t i) {
        const StartSpec& s = starts[i];
        StartResult r;
        r.descriptor = describe(s);
        SampledField u0(g, 0.0);
        bool ok = true;
        try {
            if (s.kind == "flat") {
                u0 = SampledField(g, 0.0);
            } else if (s.kind == "single_transition") {
                u0 = single_transition(std::min(p.b, 1.0), g);
            } else if (s.kind == "oscillatory") {
                u0 = oscillatory(s.n, s.epsilon, p, g).u;
            } else if (s.kind == "random") {
                Rng rng(s.seed);
                u0 = random_admissible(g, 8, rng);
            } else {
                throw std::invalid_argument("minimize: unknown start kind '" + s.kind + "'");
            }
        } catch (const std::invalid_argument&) {
            ok = false;  // start not representable on this grid
        }
        if (!ok) {
            r.skipped = true;
            r.final_energy = std::numeric_limits<double>::infinity();
            results[i] = r;
            finals[i] = SampledField(g, 0.0);
            return;
        }
        DescentOutcome out = run_descent(prob, std::move(u0), opts);
        r.final_energy = out.energy;
        r.iterations = out.iterations;
        r.converged = out.converged;
        results[i] = r;
        finals[i] = std::move(out.u);
    };

    const int workers = std::max(1, opts.workers);
    if (workers == 1) {
        for (size_t i = 0; i < starts.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (size_t i = static_cast<size_t>(t); i < starts.size(); i += static_cast<size_t>(workers)) run_one(i);
            });
        for (std::thread& th : pool) th.join();
    }

    MinimizeResult res;
    res.per_start = results;
    size_t best = 0;
    for (size_t i = 1; i < results.size(); ++i)
        if (results[i].final_energy < results[best].final_energy) best = i;
    if (results[best].skipped) throw std::runtime_error("minimize: every start was skipped");
    res.best_energy = results[best].final_energy;
    res.best_u = finals[best];
    res.best_h = optimal_height(res.best_u, p);
    for (const StartResult& r : results) res.converged_starts += (r.converged && !r.skipped) ? 1 : 0;

    const double young = -p.lambda * p.lambda / (2.0 * p.kappa);
    if (res.best_energy < young - 1e-6)
        throw std::runtime_error("minimize: discrete Young bound violated (solver bug): E = " +
                                 std::to_string(res.best_energy) + " < " + std::to_string(young));
    return res;
}

}  // namespace memblab
