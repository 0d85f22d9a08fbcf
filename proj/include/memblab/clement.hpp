// clement.hpp
// Kuhn triangulation of the torus in d = 1, 2, piecewise-affine Clement
// averaging, degree-5 simplex quadrature, 2D spectral helpers, and the
// min-kernel interpolation inequality machinery.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "memblab/grid.hpp"
#include "memblab/potential.hpp"
#include "memblab/spectral.hpp"

namespace memblab {

struct Simplex {
    std::array<std::array<double, 2>, 3> corners{};  // unwrapped coords, d+1 used
    std::array<int, 3> vertices{};                   // wrapped lattice vertex ids, d+1 used
};

struct TorusTriangulation {
    int d = 1;
    int l = 2;
    std::vector<Simplex> simplices;
    std::vector<int> vertex_simplex;  // T_v: first incident simplex in build order

    int vertex_count() const { return d == 1 ? l : l * l; }
    double simplex_measure() const;   // 1/(d! l^d)
    double simplex_diameter() const;  // sqrt(d)/l
};

// Kuhn decomposition of each lattice cube; cube-major, lower-then-upper
// simplex order, so vertex_simplex picks the lexicographically first
// incident simplex.
TorusTriangulation build_triangulation(int d, int l);

struct TorusField {
    struct Mode {
        int k1 = 0, k2 = 0;
        cplx a{};
    };
    int d = 1;
    std::function<double(double, double)> eval;  // second argument ignored for d = 1
    std::vector<Mode> modes;                     // full two-sided list when known
};

TorusField lift_profile(const std::function<double(double)>& fn1d, int d);

struct PAField {
    TorusTriangulation tri;
    std::vector<double> vertex_values;

    double operator()(double x, double y = 0.0) const;
    std::array<double, 2> gradient(int simplex_index) const;  // constant per simplex
};

// Vertex value = quadrature average of u over T_v; quad_order >= 2 selects
// the degree-5 rule (the only one shipped).
PAField clement_approximate(const TorusField& u, const TorusTriangulation& tri, int quad_order = 4);

// Degree-5 quadrature of f over one simplex of the triangulation.
double integrate_simplex(const TorusTriangulation& tri, int simplex_index,
                         const std::function<double(double, double)>& f);

double pa_l2_error_sq(const TorusField& u, const PAField& pa);  // ||u - u^(L)||_L2^2
double pa_grad_l2_sq(const PAField& pa);                        // ||grad u^(L)||_L2^2

// sum min{1, |k|^2/m^2} |u_hat_k|^2 from the field's explicit mode list.
double field_min_kernel_sum(const TorusField& u, double m);

struct KernelDecomposition {
    double lhs = 0.0;
    double term_l2 = 0.0;
    double term_grad = 0.0;
};
KernelDecomposition kernel_decomposition_check(const TorusField& u, const TorusTriangulation& tri,
                                               double m, int quad_order = 4);

// --- 2D spectral helpers (power-of-two grids) ---

struct Spectral2 {
    int n1 = 0, n2 = 0;
    std::vector<cplx> coeffs;  // [i1 * n2 + i2], DFT layout per dimension

    int freq1(int i1) const { return i1 <= n1 / 2 ? i1 : i1 - n1; }
    int freq2(int i2) const { return i2 <= n2 / 2 ? i2 : i2 - n2; }
};

Spectral2 forward_transform_2d(const std::vector<double>& vals, int n1, int n2);
double min_kernel_sum_2d(const Spectral2& s, double m);
// int ((1/delta) W(u) + delta |grad u|^2) over the 2-torus, physical gradient.
double modica_mortola_2d(const std::vector<double>& vals, int n1, int n2, double delta,
                         const DoubleWell& w);

struct FitSample {
    SampledField u;   // admissible 1D profile (or the x1-slice of a lifted field)
    double delta = 0.1;
};

// sup over the family of min_kernel_sum / ((1/L + L/m^2) * MM_delta) with
// L = max(1, floor(m)).
double nonlocal_inequality_fit(const std::vector<FitSample>& family, const DoubleWell& w, double m);

// Same ratio for one lifted sample pushed through the full 2D pipeline.
double nonlocal_fit_ratio_2d(const SampledField& u, double delta, const DoubleWell& w, double m,
                             int n2 = 8);

}  // namespace memblab
