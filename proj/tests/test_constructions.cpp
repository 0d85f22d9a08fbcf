// Analytic constructions: bounds, admissibility, degenerate probes.
#include <doctest.h>

#include <cmath>

#include "memblab/constructions.hpp"
#include "memblab/energy.hpp"
#include "memblab/rng.hpp"

using namespace memblab;

TEST_CASE("flat: energy W(0), admissible, parameter-independent") {
    Grid1D g(64);
    auto w = builtin_well("quartic");
    auto [u, h] = flat(g);
    CHECK(is_admissible(u));
    for (double lam : {0.0, 3.0}) {
        Params p{1.0, 2.0, 3.0, lam};
        CHECK(evaluate_full(u, h, p, w).total == doctest::Approx(w.evaluate(0.0)));
    }
}

TEST_CASE("single_transition: b = 1 and b = 0.04") {
    auto w = builtin_well("quartic");
    {
        Grid1D g(64);
        auto u = single_transition(1.0, g);
        CHECK(std::fabs(mean(u)) < 1e-10);
        Params p{1.0, 1.0, 1.0, 0.0};
        auto e = measured_breakdown(single_transition_profile(1.0), zero_height_profile(), p, w, 4096);
        CHECK(e.total <= 9.0);
    }
    {
        Grid1D g(1024);
        auto u = single_transition(0.04, g);
        CHECK(std::fabs(mean(u)) < 1e-10);
        Params p{0.04, 1.0, 1.0, 0.0};
        const auto prof = single_transition_profile(0.04);
        auto e = measured_breakdown(prof, zero_height_profile(), p, w, 1024);
        auto oracle = measured_breakdown(prof, zero_height_profile(), p, w, 8192);
        CHECK(e.total <= (8.0 + 1.0) * 0.2 + 0.05);
        CHECK(std::fabs(e.total - oracle.total) < 0.02);
    }
    CHECK_THROWS(single_transition(0.04, Grid1D(128)));  // under-resolved
    CHECK_THROWS(single_transition(1.5, Grid1D(1024)));
}

TEST_CASE("single_transition through the spectral energy path") {
    auto w = builtin_well("quartic");
    Grid1D g(1024);
    auto u = single_transition(0.25, g);
    Params p{0.25, 1.0, 1.0, 0.0};
    auto e = evaluate_full(u, SampledField(g, 0.0), p, w);
    CHECK(e.total <= (8.0 + 1.0) * 0.5);  // (8 + max W) sqrt(b)
    CHECK(e.tension_term == doctest::Approx(0.0));
    CHECK(e.coupling_term == doctest::Approx(0.0));
}

TEST_CASE("oscillatory: bound example and structure") {
    auto w = builtin_well("quartic");
    Params p{0.01, 1.0, 1.0, 10.0};
    // closed-form bound at n=1, eps=1: 1 + 0.08 - 6*100/49
    const double bound = ansatz_bound(1, 1.0, p, w);
    CHECK(bound == doctest::Approx(1.0 + 0.08 - 600.0 / 49.0).epsilon(1e-12));
    CHECK(bound == doctest::Approx(-11.164897959183673).epsilon(1e-9));

    Grid1D g(512);
    auto a = oscillatory(1, 1.0, p, g);
    CHECK(a.mu == doctest::Approx(10.0 * 0.5 / (1.0 + 1.0 / 48.0)));
    CHECK(is_admissible(a.u));
    CHECK(std::fabs(mean(a.h)) < 1e-10);
    auto e = measured_breakdown(a, p, w, 4096);
    auto e2 = measured_breakdown(a, p, w, 8192);
    const double tol = 2.0 * std::fabs(e.total - e2.total) + 1e-9;
    CHECK(e.total <= bound + tol);
    CHECK(e.coupling_term < 0.0);

    // spectral route: evaluate_full on the sampled pair stays below the bound
    {
        Grid1D g2(1024);
        auto a2 = oscillatory(1, 1.0, p, g2);
        const double full = evaluate_full(a2.u, a2.h, p, w).total;
        CHECK(full <= bound + 0.02 * std::fabs(bound));
    }

    // lambda = 0: no coupling, energy is the MM part only
    Params p0{0.01, 1.0, 1.0, 0.0};
    auto a0 = oscillatory(2, 0.5, p0, g);
    auto e0 = measured_breakdown(a0, p0, w, 4096);
    CHECK(e0.total >= 0.0);
    CHECK(e0.coupling_term == doctest::Approx(0.0));
    CHECK(a0.mu == doctest::Approx(0.0));

    CHECK_THROWS(oscillatory(1, 1.0, Params{1.0, 0.0, 0.0, 1.0}, g));
    CHECK_THROWS(oscillatory(8, 0.05, p, Grid1D(512)));  // under-resolved
}

TEST_CASE("ansatz_bound: lambda = 0 arithmetic") {
    auto w = builtin_well("quartic");
    Params p{1.0, 1.0, 1.0, 0.0};
    CHECK(ansatz_bound(1, 1.0, p, w) == doctest::Approx(9.0));
}

TEST_CASE("regime_select cases") {
    auto w = builtin_well("quartic");  // K = 1
    {
        auto [n, eps] = regime_select(Params{1.0, 1.0, 1.0, 5.0}, w);
        CHECK(n == 1);
        CHECK(eps == doctest::Approx(1.0));  // K <= 8b
    }
    {
        auto [n, eps] = regime_select(Params{0.01, 1.0, 1.0, 5.0}, w);
        CHECK(n == 1);
        CHECK(eps == doctest::Approx(std::sqrt(0.08)));
    }
    {
        auto [n, eps] = regime_select(Params{0.01, 100.0, 1.0, 5.0}, w);
        CHECK(n == 10);
        CHECK(eps == doctest::Approx(1.0));  // 32 b sigma / kappa = 32 >= K
    }
    CHECK_THROWS(regime_select(Params{1.0, 1.0, 0.0, 1.0}, w));
}

TEST_CASE("u_delta: geometry, mean, MM and reference bound") {
    auto w = builtin_well("quartic");
    Grid1D g(8192);
    auto u = udelta_sampled(0.01, g);
    CHECK(std::fabs(mean(u)) < 1e-10);
    CHECK(max_abs(u) <= 1.0 + 1e-12);
    CHECK(modica_mortola(u, 0.01, w) <= 2.0 * w.max_w + 8.0);
    CHECK(udelta_h12_lower_bound(0.01) == doctest::Approx(10.9948).epsilon(1e-4));
    CHECK_THROWS(udelta_sampled(0.2, g));
    CHECK_THROWS(udelta_sampled(0.01, Grid1D(1024)));  // under-resolved
}

TEST_CASE("mollified_step: plateaus and admissibility") {
    Grid1D g(1024);
    auto u = mollified_step(0.1, g);
    CHECK(std::fabs(mean(u)) < 1e-10);
    CHECK(max_abs(u) <= 1.0 + 1e-12);
    int plus = 0, minus = 0;
    for (double v : u.values) {
        if (v == 1.0) ++plus;
        if (v == -1.0) ++minus;
    }
    CHECK(plus >= static_cast<int>(0.3 * g.n_samples) - 2);
    CHECK(minus >= static_cast<int>(0.3 * g.n_samples) - 2);
    CHECK_THROWS(mollified_step(0.1, Grid1D(256)));
}

TEST_CASE("kappa = 0 probes: divergence and vanishing") {
    auto w = builtin_well("quartic");
    // b < lambda^2/sigma: energies decrease without bound as eps -> 0
    Params p_div{0.5, 1.0, 0.0, 1.0};
    double prev = 1e300;
    for (double eps : {0.05, 0.02, 0.01, 0.005, 0.002}) {
        const int quad = std::max(4096, next_pow2(static_cast<int>(64.0 / eps)));
        const double e = kappa0_probe_energy(eps, p_div, w, quad);
        CHECK(e < prev);
        prev = e;
    }
    CHECK(prev < -40.0);

    // b = lambda^2/sigma: positive, tending to zero
    Params p_zero{1.0, 1.0, 0.0, 1.0};
    prev = 1e300;
    for (double eps : {0.05, 0.02, 0.01, 0.005, 0.002}) {
        const int quad = std::max(4096, next_pow2(static_cast<int>(64.0 / eps)));
        const double e = kappa0_probe_energy(eps, p_zero, w, quad);
        CHECK(e > 0.0);
        CHECK(e < prev);
        prev = e;
    }
    CHECK(prev < 0.01);
}

TEST_CASE("constructions are admissible fixed points of the projection") {
    auto w = builtin_well("quartic");
    Grid1D g(2048);
    Params p{0.1, 2.0, 0.5, 8.0};
    std::vector<SampledField> fields;
    fields.push_back(flat(g).first);
    fields.push_back(single_transition(0.25, g));
    fields.push_back(oscillatory(3, 0.4, p, g).u);
    fields.push_back(udelta_sampled(0.05, g));
    fields.push_back(mollified_step(0.05, g));
    for (const auto& u : fields) {
        CHECK(is_admissible(u));
        auto pr = project_admissible(u);
        CHECK(std::sqrt(l2_norm_sq(pr.field - u)) < 1e-8);
    }
}

TEST_CASE("sandwich: measured oscillatory energy below the bound at regime_select") {
    auto w = builtin_well("quartic");
    Rng rng(2024);
    int tested = 0;
    while (tested < 30) {
        Params p{rng.log_uniform(1e-3, 1.0), rng.log_uniform(0.1, 10.0),
                 rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 100.0)};
        auto [n, eps] = regime_select(p, w);
        if (n > 8) continue;
        const int quad = next_pow2(std::max(1024, static_cast<int>(64.0 * n / eps)));
        Grid1D g(quad);
        auto a = oscillatory(n, eps, p, g);
        auto e = measured_breakdown(a, p, w, quad);
        auto e2 = measured_breakdown(a, p, w, 2 * quad);
        const double bound = ansatz_bound(n, eps, p, w);
        const double tol = 2.0 * std::fabs(e.total - e2.total) + 1e-8 * (1.0 + std::fabs(bound));
        CHECK(e.total <= bound + tol);
        ++tested;
    }
}

TEST_CASE("supercritical selections reach -(1/32) lambda^2/kappa") {
    auto w = builtin_well("quartic");
    const double c_big = std::max(2048.0, 256.0 * std::sqrt(2.0 * w.max_w));
    Rng rng(771);
    int tested = 0;
    while (tested < 20) {
        Params p{rng.log_uniform(1e-4, 1.0), rng.log_uniform(0.1, 10.0),
                 rng.log_uniform(0.1, 10.0), 0.0};
        const double thr = std::max(std::max(p.b * p.sigma, p.b * p.kappa),
                                    std::max(std::sqrt(p.b * p.sigma * p.kappa),
                                             std::sqrt(p.b) * p.kappa));
        p.lambda = std::sqrt(c_big * thr * rng.log_uniform(1.0, 50.0));
        auto [n, eps] = regime_select(p, w);
        if (n > 10) continue;
        ++tested;
        const int quad = next_pow2(std::max(1024, static_cast<int>(64.0 * n / eps)));
        Grid1D g(quad);
        auto a = oscillatory(n, eps, p, g);
        const double e1 = measured_breakdown(a, p, w, quad).total;
        const double e2 = measured_breakdown(a, p, w, 2 * quad).total;
        const double tol = 2.0 * std::fabs(e1 - e2) + 1e-9 * std::fabs(e1);
        CHECK(e1 <= -p.lambda * p.lambda / (32.0 * p.kappa) + tol);
    }
}

TEST_CASE("b -> 0 limit of the ansatz bound approaches the Young level") {
    auto w = builtin_well("quartic");
    Params p{0.0, 1.0, 1.0, 1.0};
    double prev_ratio = 0.0;
    for (double b : {1e-6, 1e-8, 1e-10, 1e-12}) {
        p.b = b;
        const double eps = std::sqrt(b);
        const int n = static_cast<int>(std::floor(std::pow(b, -0.125)));
        const double bound = ansatz_bound(n, eps, p, w);
        const double ratio = bound / (-p.lambda * p.lambda / (2.0 * p.kappa));
        CHECK(ratio > prev_ratio);  // monotone approach to 1 from below
        prev_ratio = ratio;
    }
    CHECK(prev_ratio > 0.9);
    CHECK(prev_ratio <= 1.0);
}
