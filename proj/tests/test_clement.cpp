// Triangulation, Clement averaging, kernel decomposition, nonlocal fit.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "memblab/clement.hpp"
#include "memblab/constructions.hpp"
#include "memblab/energy.hpp"
#include "memblab/seminorm.hpp"

using namespace memblab;

namespace {
constexpr double pi = std::numbers::pi;
}  // namespace

TEST_CASE("triangulation: counts, measures, diameters, tiling") {
    {
        auto tri = build_triangulation(1, 4);
        CHECK(tri.simplices.size() == 4);
        CHECK(tri.simplex_measure() == doctest::Approx(0.25));
        CHECK(tri.simplex_diameter() == doctest::Approx(0.25));
    }
    {
        auto tri = build_triangulation(2, 2);
        CHECK(tri.simplices.size() == 8);
        CHECK(tri.simplex_measure() == doctest::Approx(1.0 / 8.0));
        CHECK(tri.simplex_diameter() == doctest::Approx(std::sqrt(2.0) / 2.0));
        CHECK(tri.vertex_count() == 4);
        double total = 0.0;
        for (size_t i = 0; i < tri.simplices.size(); ++i) total += tri.simplex_measure();
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        // each vertex has an incident simplex assigned
        for (int v = 0; v < tri.vertex_count(); ++v) {
            const int si = tri.vertex_simplex[static_cast<size_t>(v)];
            CHECK(si >= 0);
            const auto& s = tri.simplices[static_cast<size_t>(si)];
            CHECK((s.vertices[0] == v || s.vertices[1] == v || s.vertices[2] == v));
        }
    }
    CHECK_THROWS(build_triangulation(3, 4));
    CHECK_THROWS(build_triangulation(2, 1));
}

TEST_CASE("simplex quadrature: exact through degree 5") {
    {
        // interval [0, 1/l]
        auto tri = build_triangulation(1, 2);
        for (int deg = 0; deg <= 5; ++deg) {
            const double got = integrate_simplex(tri, 0, [deg](double x, double) {
                return std::pow(x, deg);
            });
            const double exact = std::pow(0.5, deg + 1) / (deg + 1);
            CHECK(got == doctest::Approx(exact).epsilon(1e-12));
        }
    }
    {
        // reference-like triangle (0,0),(1/l,0),(1/l,1/l) with l=1 is not a
        // torus cell; use l=2 and rescale the monomial oracle instead:
        // integral over conv{(0,0),(h,0),(h,h)} of x^a y^b equals
        // h^{a+b+2} * integral over conv{(0,0),(1,0),(1,1)}.
        auto tri = build_triangulation(2, 2);
        const double h = 0.5;
        auto exact_lower = [&](int a, int b) {
            // over conv{(0,0),(1,0),(1,1)}: int x^a y^b = b!a'!/... compute by
            // direct formula: int_0^1 x^a int_0^x y^b dy dx = 1/((b+1)(a+b+2))
            return std::pow(h, a + b + 2) / ((b + 1.0) * (a + b + 2.0));
        };
        for (int a = 0; a <= 3; ++a) {
            for (int b = 0; a + b <= 5 && b <= 3; ++b) {
                const double got = integrate_simplex(tri, 0, [a, b](double x, double y) {
                    return std::pow(x, a) * std::pow(y, b);
                });
                CHECK(got == doctest::Approx(exact_lower(a, b)).epsilon(1e-11));
            }
        }
        // unit-triangle normalization cross-check: sum over both triangles of
        // a full cell integrates x^a y^b over the cell
        const double cell = integrate_simplex(tri, 0, [](double x, double y) { return x + y; }) +
                            integrate_simplex(tri, 1, [](double x, double y) { return x + y; });
        CHECK(cell == doctest::Approx(h * h * h).epsilon(1e-12));  // int over [0,h]^2 of x+y
    }
}

TEST_CASE("clement_approximate: constants reproduce, box preserved") {
    for (int d : {1, 2}) {
        auto tri = build_triangulation(d, 8);
        TorusField c;
        c.d = d;
        c.eval = [](double, double) { return 0.37; };
        auto pa = clement_approximate(c, tri);
        for (double v : pa.vertex_values) CHECK(v == doctest::Approx(0.37).epsilon(1e-12));
        CHECK(pa_l2_error_sq(c, pa) < 1e-20);
    }
    {
        auto tri = build_triangulation(1, 8);
        auto prof = udelta_profile(0.1);
        TorusField f = lift_profile(prof.value, 1);
        auto pa = clement_approximate(f, tri);
        for (double v : pa.vertex_values) CHECK(std::fabs(v) <= 1.0 + 1e-12);
    }
}

TEST_CASE("clement_approximate: refinement convergence") {
    {
        // One-sided vertex averages (lexicographic T_v) carry a half-cell
        // phase shift, so the error is ~ pi/(L sqrt(2)) and first order in L.
        TorusField f;
        f.d = 1;
        f.eval = [](double x, double) { return std::cos(2 * pi * x); };
        auto e64 = std::sqrt(pa_l2_error_sq(f, clement_approximate(f, build_triangulation(1, 64))));
        auto e128 = std::sqrt(pa_l2_error_sq(f, clement_approximate(f, build_triangulation(1, 128))));
        CHECK(e64 <= 0.04);
        CHECK(e128 < e64);
        CHECK(e128 / e64 == doctest::Approx(0.5).epsilon(0.15));  // first-order rate
    }
    {
        TorusField f;
        f.d = 2;
        f.eval = [](double x, double y) { return std::cos(2 * pi * x) * std::cos(2 * pi * y); };
        double prev = 1e300;
        for (int l : {8, 16, 32}) {
            const double e = std::sqrt(pa_l2_error_sq(f, clement_approximate(f, build_triangulation(2, l))));
            CHECK(e < prev);
            prev = e;
        }
    }
}

TEST_CASE("kernel decomposition inequality, d = 1 and d = 2") {
    {
        // constants: every term vanishes
        TorusField c;
        c.d = 2;
        c.eval = [](double, double) { return 0.4; };
        c.modes = {{0, 0, cplx(0.4, 0.0)}};
        auto kd = kernel_decomposition_check(c, build_triangulation(2, 8), 8.0);
        CHECK(kd.lhs == doctest::Approx(0.0));
        CHECK(kd.term_l2 == doctest::Approx(0.0).epsilon(1e-20));
        CHECK(kd.term_grad == doctest::Approx(0.0).epsilon(1e-20));
    }
    {
        TorusField f;
        f.d = 1;
        f.eval = [](double x, double) { return std::cos(2 * pi * x); };
        f.modes = {{1, 0, cplx(0.5, 0.0)}, {-1, 0, cplx(0.5, 0.0)}};
        auto tri = build_triangulation(1, 16);
        auto kd = kernel_decomposition_check(f, tri, 8.0);
        CHECK(kd.lhs <= 2.0 * (kd.term_l2 + kd.term_grad / 64.0) + 1e-6);
    }
    {
        TorusField f;
        f.d = 2;
        f.eval = [](double x, double y) { return std::cos(2 * pi * x) * std::cos(2 * pi * y); };
        f.modes = {{1, 1, cplx(0.25, 0.0)},
                   {1, -1, cplx(0.25, 0.0)},
                   {-1, 1, cplx(0.25, 0.0)},
                   {-1, -1, cplx(0.25, 0.0)}};
        for (int l : {8, 16, 32}) {
            auto tri = build_triangulation(2, l);
            for (double m : {4.0, 8.0, 16.0}) {
                auto kd = kernel_decomposition_check(f, tri, m);
                CHECK(kd.lhs <= 2.0 * (kd.term_l2 + kd.term_grad / (m * m)) + 1e-8);
            }
        }
    }
    {
        // smoothed checkerboard: few harmonics of the sign pattern
        TorusField f;
        f.d = 2;
        auto val = [](double x, double y) {
            double acc = 0.0;
            const int ks[] = {1, 3};
            const double amp[] = {0.6, 0.15};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    acc += amp[i] * amp[j] * 4.0 * std::sin(2 * pi * ks[i] * x) *
                           std::sin(2 * pi * ks[j] * y);
            return acc;
        };
        f.eval = [val](double x, double y) { return val(x, y); };
        const int ks[] = {1, 3};
        const double amp[] = {0.6, 0.15};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                // 4 sin sin = -(e1 - e-1)(e2 - e-2): four modes of modulus amp_i amp_j
                const double a = amp[i] * amp[j];
                for (int s1 : {1, -1})
                    for (int s2 : {1, -1})
                        f.modes.push_back({s1 * ks[i], s2 * ks[j],
                                           cplx(-s1 * s2 * a, 0.0)});
            }
        }
        auto tri = build_triangulation(2, 16);
        auto kd = kernel_decomposition_check(f, tri, 16.0);
        CHECK(kd.lhs <= 2.0 * (kd.term_l2 + kd.term_grad / 256.0) + 1e-8);
        CHECK(kd.lhs > 0.0);
    }
}

TEST_CASE("lifted fields: 2D pipeline matches the 1D shortcut") {
    auto w = builtin_well("quartic");
    const double delta = 0.05, m = 8.0;
    auto u = sample_admissible(udelta_profile(delta), Grid1D(2048));
    const double r2d = nonlocal_fit_ratio_2d(u, delta, w, m, 8);
    std::vector<FitSample> fam = {{u, delta}};
    const double r1d = nonlocal_inequality_fit(fam, w, m);
    CHECK(r2d == doctest::Approx(r1d).epsilon(1e-9));
}

TEST_CASE("nonlocal_inequality_fit: stability and special cases") {
    auto w = builtin_well("quartic");
    {
        // saturated window (M*delta <= 0.1): fitted constant stable within 25%
        std::vector<double> cs;
        for (double d : {0.01, 0.005, 0.002}) {
            const int n = next_pow2(std::max(256, static_cast<int>(std::ceil(64.0 / d))));
            std::vector<FitSample> fam = {{sample_admissible(udelta_profile(d), Grid1D(n)), d}};
            cs.push_back(nonlocal_inequality_fit(fam, w, 10.0));
        }
        CHECK(*std::max_element(cs.begin(), cs.end()) /
                  *std::min_element(cs.begin(), cs.end()) < 1.25);
    }
    {
        // pure cosine stays below the u_delta corpus constant
        Grid1D g(256);
        auto cosx = sample_function(g, [](double x) { return std::cos(2 * pi * x); });
        std::vector<FitSample> one = {{cosx, 0.1}};
        const double c_cos = nonlocal_inequality_fit(one, w, 10.0);
        std::vector<FitSample> corpus;
        for (double d : {0.02, 0.01}) {
            const int n = next_pow2(static_cast<int>(std::ceil(64.0 / d)));
            corpus.push_back({sample_admissible(udelta_profile(d), Grid1D(n)), d});
        }
        CHECK(c_cos < nonlocal_inequality_fit(corpus, w, 10.0));
    }
    {
        // M <= 1: saturated kernel; the inequality still holds on the corpus
        Grid1D g(512);
        auto u = sample_admissible(udelta_profile(0.1), Grid1D(1024));
        std::vector<FitSample> fam = {{u, 0.1}};
        const double c = nonlocal_inequality_fit(fam, w, 1.0);
        CHECK(c > 0.0);
        auto u_hat = forward_transform(u);
        CHECK(min_kernel_sum(u_hat, 1.0) ==
              doctest::Approx(parseval_sum(u_hat) - std::norm(u_hat.coeff(0))).epsilon(1e-12));
        (void)g;
    }
    CHECK_THROWS(nonlocal_inequality_fit({}, builtin_well("quartic"), 4.0));
}
