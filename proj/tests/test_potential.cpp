// Double wells: (H1)-(H3), derived constants, phi quadrature.
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "memblab/potential.hpp"
#include "memblab/quadrature.hpp"
#include "memblab/rng.hpp"
#include "memblab/spectral.hpp"

using namespace memblab;

TEST_CASE("builtin wells: definition values") {
    auto quartic = builtin_well("quartic");
    CHECK(quartic.evaluate(0.0) == doctest::Approx(1.0));
    CHECK(quartic.max_w == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(quartic.evaluate(1.0) == doctest::Approx(0.0));
    CHECK(quartic.evaluate(-1.0) == doctest::Approx(0.0));

    auto quadratic = builtin_well("quadratic");
    CHECK(quadratic.evaluate(1.0) == doctest::Approx(0.0));
    CHECK(quadratic.evaluate(-1.0) == doctest::Approx(0.0));
    CHECK(quadratic.max_w == doctest::Approx(1.0).epsilon(1e-10));

    auto logw = builtin_well("logarithmic");
    CHECK(logw.evaluate(1.0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(logw.evaluate(0.0) == doctest::Approx(2.0 * std::log(2.0)));
    CHECK(logw.max_w == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));

    CHECK_THROWS(builtin_well("sextic"));
}

TEST_CASE("c_mm closed forms") {
    // quartic: min over [-1/2,1/2] of (1-t^2)^2 is (3/4)^2 = 9/16 at the
    // endpoints, so c_mm = max{9/16, 3/4} = 3/4 exactly.
    auto quartic = builtin_well("quartic");
    CHECK(quartic.c_mm == doctest::Approx(0.75).epsilon(1e-10));
    auto quadratic = builtin_well("quadratic");
    CHECK(quadratic.c_mm == doctest::Approx(std::sqrt(0.75)).epsilon(1e-10));
}

TEST_CASE("c_w estimates") {
    // For both polynomial wells the grid ratio attains its minimum 1 at t=0.
    auto quartic = builtin_well("quartic");
    CHECK(quartic.c_w == doctest::Approx(0.999).epsilon(1e-6));
    auto quadratic = builtin_well("quadratic");
    CHECK(quadratic.c_w == doctest::Approx(0.999).epsilon(1e-6));
}

TEST_CASE("phi: antiderivative of sqrt(W)") {
    auto quartic = builtin_well("quartic");
    // phi(z) = integral of (1-t^2) from -1: z - z^3/3 + 2/3
    for (double z : {-1.0, -0.5, 0.0, 0.3, 1.0}) {
        const double exact = z - z * z * z / 3.0 + 2.0 / 3.0;
        CHECK(quartic.phi(z) == doctest::Approx(exact).epsilon(1e-9));
    }
    // nondecreasing
    double prev = quartic.phi(-1.0);
    for (double z = -0.9; z <= 1.0; z += 0.1) {
        const double cur = quartic.phi(z);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
    // quadratic well: phi(1) - phi(-1) = pi/2 (1/2 circle area formula)
    auto quadratic = builtin_well("quadratic");
    CHECK(quadratic.phi(1.0) - quadratic.phi(-1.0) ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-8));
    // independent composite-midpoint oracle for the increment phi(b) - phi(a)
    auto sqrt_w = [&](double t) { return std::sqrt(quadratic.evaluate(t)); };
    const double a = -0.7, b2 = 0.4;
    double midpoint = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) midpoint += sqrt_w(a + (b2 - a) * (i + 0.5) / n);
    midpoint *= (b2 - a) / n;
    CHECK(quadratic.phi(b2) - quadratic.phi(a) == doctest::Approx(midpoint).epsilon(1e-8));
}

TEST_CASE("verify_h3: quartic sup ratio is 3, within the corrected bound") {
    auto quartic = builtin_well("quartic");
    const double cpw = verify_h3(quartic, 1000);
    // sup over pairs of |z1-z2|^2/|phi(z1)-phi(z2)| is attained at (-1, 1):
    // 4 / (4/3) = 3; the valid general bound is 4/sqrt(c_w).
    CHECK(cpw == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(cpw <= 4.0 / std::sqrt(quartic.c_w) + 1e-9);
}

TEST_CASE("verify_h3: stability under grid refinement, degenerate pairs skipped") {
    auto quadratic = builtin_well("quadratic");
    const double c1 = verify_h3(quadratic, 1000);
    const double c2 = verify_h3(quadratic, 2000);
    CHECK(std::fabs(c1 - c2) / c2 < 0.01);
    CHECK(c2 <= 4.0 / std::sqrt(quadratic.c_w) + 1e-9);
}

TEST_CASE("(H3) inequality holds with the returned constant on random pairs") {
    for (const char* name : {"quartic", "quadratic", "logarithmic"}) {
        auto w = builtin_well(name);
        const double cpw = verify_h3(w, 1500);
        Rng rng(42);
        for (int i = 0; i < 1000; ++i) {
            const double z1 = rng.uniform(-1.0, 1.0);
            const double z2 = rng.uniform(-1.0, 1.0);
            const double dphi = std::fabs(w.phi(z1) - w.phi(z2));
            CHECK((z1 - z2) * (z1 - z2) <= cpw * 1.005 * dphi + 1e-9);
        }
    }
}

TEST_CASE("Modica-Mortola floor holds for every builtin well") {
    Grid1D g(256);
    for (const char* name : {"quartic", "quadratic", "logarithmic"}) {
        auto w = builtin_well(name);
        Rng rng(71);
        for (int rep = 0; rep < 25; ++rep) {
            auto u = random_admissible(g, 16, rng);
            double well = 0.0;
            for (double v : u.values) well += w.evaluate(v);
            well /= u.size();
            auto u_hat = forward_transform(u);
            double h1 = 0.0;
            for (int idx = 0; idx < u_hat.n; ++idx) {
                const int k = u_hat.freq_of_index(idx);
                const double om = 2.0 * std::numbers::pi * k;
                h1 += om * om * std::norm(u_hat.coeffs[idx]);
            }
            for (double eps : {0.01, 0.1, 1.0, 10.0})
                CHECK(well + eps * eps * h1 >= w.c_mm * std::min(1.0, eps) - 1e-8);
        }
    }
}

TEST_CASE("logarithmic well derivative is clipped at the box edge") {
    auto logw = builtin_well("logarithmic");
    CHECK(logw.derivative(1.0) == doctest::Approx(-1e6));
    CHECK(logw.derivative(-1.0) == doctest::Approx(1e6));
    CHECK(std::fabs(logw.derivative(0.0)) < 1e-12);
}
