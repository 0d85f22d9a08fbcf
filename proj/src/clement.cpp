// clement.cpp
#include "memblab/clement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "memblab/energy.hpp"
#include "memblab/seminorm.hpp"

namespace memblab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct QuadNode {
    double b0, b1, b2;  // barycentric coordinates (b2 unused for d=1)
    double w;
};

// Degree-5 rules: 3-point Gauss on the interval, 7-point symmetric rule on
// the triangle. Weights are normalized to sum to 1 (multiply by measure).
const std::vector<QuadNode>& quad_nodes(int d) {
    static const std::vector<QuadNode> line = [] {
        const double r = std::sqrt(0.6);
        return std::vector<QuadNode>{
            {0.5 * (1.0 - r), 0.5 * (1.0 + r), 0.0, 5.0 / 18.0},
            {0.5, 0.5, 0.0, 8.0 / 18.0},
            {0.5 * (1.0 + r), 0.5 * (1.0 - r), 0.0, 5.0 / 18.0},
        };
    }();
    static const std::vector<QuadNode> tri = [] {
        const double s15 = std::sqrt(15.0);
        const double a1 = (6.0 - s15) / 21.0, w1 = (155.0 - s15) / 1200.0;
        const double a2 = (6.0 + s15) / 21.0, w2 = (155.0 + s15) / 1200.0;
        return std::vector<QuadNode>{
            {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0},
            {a1, a1, 1.0 - 2.0 * a1, w1},
            {a1, 1.0 - 2.0 * a1, a1, w1},
            {1.0 - 2.0 * a1, a1, a1, w1},
            {a2, a2, 1.0 - 2.0 * a2, w2},
            {a2, 1.0 - 2.0 * a2, a2, w2},
            {1.0 - 2.0 * a2, a2, a2, w2},
        };
    }();
    return d == 1 ? line : tri;
}

}  // namespace

double TorusTriangulation::simplex_measure() const {
    return d == 1 ? 1.0 / l : 1.0 / (2.0 * l * l);
}

double TorusTriangulation::simplex_diameter() const { return std::sqrt(static_cast<double>(d)) / l; }

TorusTriangulation build_triangulation(int d, int l) {
    if (d != 1 && d != 2) throw std::invalid_argument("build_triangulation: d must be 1 or 2");
    if (l < 2) throw std::invalid_argument("build_triangulation: l must be >= 2");
    TorusTriangulation tri;
    tri.d = d;
    tri.l = l;
    const double h = 1.0 / l;
    if (d == 1) {
        for (int m = 0; m < l; ++m) {
            Simplex s;
            s.corners[0] = {m * h, 0.0};
            s.corners[1] = {(m + 1) * h, 0.0};
            s.vertices = {m, (m + 1) % l, 0};
            tri.simplices.push_back(s);
        }
    } else {
        for (int i = 0; i < l; ++i) {
            for (int j = 0; j < l; ++j) {
                const double x0 = i * h, y0 = j * h;
                const int v00 = i + l * j;
                const int v10 = (i + 1) % l + l * j;
                const int v01 = i + l * ((j + 1) % l);
                const int v11 = (i + 1) % l + l * ((j + 1) % l);
                Simplex lower;  // path 0 -> e1 -> e1+e2
                lower.corners = {{{x0, y0}, {x0 + h, y0}, {x0 + h, y0 + h}}};
                lower.vertices = {v00, v10, v11};
                tri.simplices.push_back(lower);
                Simplex upper;  // path 0 -> e2 -> e1+e2
                upper.corners = {{{x0, y0}, {x0, y0 + h}, {x0 + h, y0 + h}}};
                upper.vertices = {v00, v01, v11};
                tri.simplices.push_back(upper);
            }
        }
    }
    tri.vertex_simplex.assign(static_cast<size_t>(tri.vertex_count()), -1);
    for (int si = 0; si < static_cast<int>(tri.simplices.size()); ++si) {
        for (int c = 0; c <= d; ++c) {
            const int v = tri.simplices[static_cast<size_t>(si)].vertices[static_cast<size_t>(c)];
            if (tri.vertex_simplex[static_cast<size_t>(v)] < 0)
                tri.vertex_simplex[static_cast<size_t>(v)] = si;
        }
    }
    return tri;
}

TorusField lift_profile(const std::function<double(double)>& fn1d, int d) {
    TorusField f;
    f.d = d;
    f.eval = [fn1d](double x, double) { return fn1d(x); };
    return f;
}

double PAField::operator()(double x, double y) const {
    const int l = tri.l;
    if (tri.d == 1) {
        const double t = wrap_unit(x) * l;
        const int c = std::min(static_cast<int>(t), l - 1);
        const double local = t - c;
        const double v0 = vertex_values[static_cast<size_t>(c)];
        const double v1 = vertex_values[static_cast<size_t>((c + 1) % l)];
        return (1.0 - local) * v0 + local * v1;
    }
    const double tx_all = wrap_unit(x) * l;
    const double ty_all = wrap_unit(y) * l;
    const int i = std::min(static_cast<int>(tx_all), l - 1);
    const int j = std::min(static_cast<int>(ty_all), l - 1);
    const double tx = tx_all - i, ty = ty_all - j;
    const double v00 = vertex_values[static_cast<size_t>(i + l * j)];
    const double v10 = vertex_values[static_cast<size_t>((i + 1) % l + l * j)];
    const double v01 = vertex_values[static_cast<size_t>(i + l * ((j + 1) % l))];
    const double v11 = vertex_values[static_cast<size_t>((i + 1) % l + l * ((j + 1) % l))];
    if (tx >= ty) return v00 * (1.0 - tx) + v10 * (tx - ty) + v11 * ty;
    return v00 * (1.0 - ty) + v01 * (ty - tx) + v11 * tx;
}

std::array<double, 2> PAField::gradient(int simplex_index) const {
    const Simplex& s = tri.simplices[static_cast<size_t>(simplex_index)];
    const double l = tri.l;
    const double f0 = vertex_values[static_cast<size_t>(s.vertices[0])];
    const double f1 = vertex_values[static_cast<size_t>(s.vertices[1])];
    if (tri.d == 1) return {l * (f1 - f0), 0.0};
    const double f2 = vertex_values[static_cast<size_t>(s.vertices[2])];
    // solve [p1-p0; p2-p0]^T g = [f1-f0; f2-f0] for the affine gradient
    const double ax = s.corners[1][0] - s.corners[0][0];
    const double ay = s.corners[1][1] - s.corners[0][1];
    const double bx = s.corners[2][0] - s.corners[0][0];
    const double by = s.corners[2][1] - s.corners[0][1];
    const double det = ax * by - ay * bx;
    const double d1 = f1 - f0, d2 = f2 - f0;
    return {(by * d1 - ay * d2) / det, (-bx * d1 + ax * d2) / det};
}

double integrate_simplex(const TorusTriangulation& tri, int simplex_index,
                         const std::function<double(double, double)>& f) {
    const Simplex& s = tri.simplices[static_cast<size_t>(simplex_index)];
    double acc = 0.0;
    for (const QuadNode& q : quad_nodes(tri.d)) {
        double x = q.b0 * s.corners[0][0] + q.b1 * s.corners[1][0];
        double y = q.b0 * s.corners[0][1] + q.b1 * s.corners[1][1];
        if (tri.d == 2) {
            x += q.b2 * s.corners[2][0];
            y += q.b2 * s.corners[2][1];
        }
        acc += q.w * f(wrap_unit(x), wrap_unit(y));
    }
    return acc * tri.simplex_measure();
}

PAField clement_approximate(const TorusField& u, const TorusTriangulation& tri, int quad_order) {
    if (u.d != tri.d) throw std::invalid_argument("clement_approximate: dimension mismatch");
    if (quad_order < 2) throw std::invalid_argument("clement_approximate: quad_order must be >= 2");
    PAField pa;
    pa.tri = tri;
    pa.vertex_values.assign(static_cast<size_t>(tri.vertex_count()), 0.0);
    const double inv_measure = 1.0 / tri.simplex_measure();
    for (int v = 0; v < tri.vertex_count(); ++v) {
        const int si = tri.vertex_simplex[static_cast<size_t>(v)];
        pa.vertex_values[static_cast<size_t>(v)] = inv_measure * integrate_simplex(tri, si, u.eval);
    }
    return pa;
}

double pa_l2_error_sq(const TorusField& u, const PAField& pa) {
    double acc = 0.0;
    for (int si = 0; si < static_cast<int>(pa.tri.simplices.size()); ++si) {
        acc += integrate_simplex(pa.tri, si, [&](double x, double y) {
            const double d = u.eval(x, y) - pa(x, y);
            return d * d;
        });
    }
    return acc;
}

double pa_grad_l2_sq(const PAField& pa) {
    double acc = 0.0;
    const double measure = pa.tri.simplex_measure();
    for (int si = 0; si < static_cast<int>(pa.tri.simplices.size()); ++si) {
        const std::array<double, 2> g = pa.gradient(si);
        acc += measure * (g[0] * g[0] + g[1] * g[1]);
    }
    return acc;
}

double field_min_kernel_sum(const TorusField& u, double m) {
    if (!(m > 0.0)) throw std::invalid_argument("field_min_kernel_sum: m must be positive");
    double acc = 0.0;
    for (const TorusField::Mode& mode : u.modes) {
        const double kk = static_cast<double>(mode.k1) * mode.k1 +
                          static_cast<double>(mode.k2) * mode.k2;
        if (kk == 0.0) continue;
        acc += std::min(1.0, kk / (m * m)) * std::norm(mode.a);
    }
    return acc;
}

KernelDecomposition kernel_decomposition_check(const TorusField& u, const TorusTriangulation& tri,
                                               double m, int quad_order) {
    if (u.d != tri.d) throw std::invalid_argument("kernel_decomposition_check: dimension mismatch");
    KernelDecomposition r;
    r.lhs = field_min_kernel_sum(u, m);
    const PAField pa = clement_approximate(u, tri, quad_order);
    r.term_l2 = pa_l2_error_sq(u, pa);
    r.term_grad = pa_grad_l2_sq(pa);
    return r;
}

Spectral2 forward_transform_2d(const std::vector<double>& vals, int n1, int n2) {
    if (!is_power_of_two(n1) || !is_power_of_two(n2))
        throw std::invalid_argument("forward_transform_2d: grid sides must be powers of two");
    if (static_cast<int>(vals.size()) != n1 * n2)
        throw std::invalid_argument("forward_transform_2d: size mismatch");
    Spectral2 s;
    s.n1 = n1;
    s.n2 = n2;
    s.coeffs.assign(vals.begin(), vals.end());
    // rows (dimension 2)
    std::vector<cplx> buf(static_cast<size_t>(std::max(n1, n2)));
    for (int i1 = 0; i1 < n1; ++i1) {
        buf.assign(s.coeffs.begin() + static_cast<long>(i1) * n2,
                   s.coeffs.begin() + static_cast<long>(i1 + 1) * n2);
        fft_pow2(buf, -1);
        std::copy(buf.begin(), buf.end(), s.coeffs.begin() + static_cast<long>(i1) * n2);
    }
    // columns (dimension 1)
    buf.resize(static_cast<size_t>(n1));
    for (int i2 = 0; i2 < n2; ++i2) {
        for (int i1 = 0; i1 < n1; ++i1) buf[static_cast<size_t>(i1)] = s.coeffs[static_cast<size_t>(i1) * n2 + i2];
        fft_pow2(buf, -1);
        for (int i1 = 0; i1 < n1; ++i1) s.coeffs[static_cast<size_t>(i1) * n2 + i2] = buf[static_cast<size_t>(i1)];
    }
    const double scale = 1.0 / (static_cast<double>(n1) * n2);
    for (cplx& c : s.coeffs) c *= scale;
    return s;
}

double min_kernel_sum_2d(const Spectral2& s, double m) {
    if (!(m > 0.0)) throw std::invalid_argument("min_kernel_sum_2d: m must be positive");
    double acc = 0.0;
    for (int i1 = 0; i1 < s.n1; ++i1) {
        const double k1 = s.freq1(i1);
        for (int i2 = 0; i2 < s.n2; ++i2) {
            const double k2 = s.freq2(i2);
            const double kk = k1 * k1 + k2 * k2;
            if (kk == 0.0) continue;
            acc += std::min(1.0, kk / (m * m)) * std::norm(s.coeffs[static_cast<size_t>(i1) * s.n2 + i2]);
        }
    }
    return acc;
}

double modica_mortola_2d(const std::vector<double>& vals, int n1, int n2, double delta,
                         const DoubleWell& w) {
    if (!(delta > 0.0)) throw std::invalid_argument("modica_mortola_2d: delta must be positive");
    double well = 0.0;
    for (double v : vals) well += w.evaluate(v);
    well /= vals.size();
    const Spectral2 s = forward_transform_2d(vals, n1, n2);
    double grad = 0.0;
    for (int i1 = 0; i1 < n1; ++i1) {
        const double w1 = two_pi * s.freq1(i1);
        for (int i2 = 0; i2 < n2; ++i2) {
            const double w2 = two_pi * s.freq2(i2);
            grad += (w1 * w1 + w2 * w2) * std::norm(s.coeffs[static_cast<size_t>(i1) * n2 + i2]);
        }
    }
    return well / delta + delta * grad;
}

double nonlocal_inequality_fit(const std::vector<FitSample>& family, const DoubleWell& w, double m) {
    if (family.empty()) throw std::invalid_argument("nonlocal_inequality_fit: empty family");
    if (!(m > 0.0)) throw std::invalid_argument("nonlocal_inequality_fit: m must be positive");
    const double L = std::max(1.0, std::floor(m));
    const double factor = 1.0 / L + L / (m * m);
    double sup = 0.0;
    for (const FitSample& fs : family) {
        if (!is_admissible(fs.u))
            throw std::invalid_argument("nonlocal_inequality_fit: family member not admissible");
        const SpectralField u_hat = forward_transform(fs.u);
        const double lhs = min_kernel_sum(u_hat, m);
        const double mm = modica_mortola(fs.u, u_hat, fs.delta, w);
        sup = std::max(sup, lhs / (factor * mm));
    }
    return sup;
}

double nonlocal_fit_ratio_2d(const SampledField& u, double delta, const DoubleWell& w, double m,
                             int n2) {
    const int n1 = u.size();
    std::vector<double> vals(static_cast<size_t>(n1) * n2);
    for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2)
            vals[static_cast<size_t>(i1) * n2 + i2] = u.values[static_cast<size_t>(i1)];
    const Spectral2 s = forward_transform_2d(vals, n1, n2);
    const double lhs = min_kernel_sum_2d(s, m);
    const double mm = modica_mortola_2d(vals, n1, n2, delta, w);
    const double L = std::max(1.0, std::floor(m));
    return lhs / ((1.0 / L + L / (m * m)) * mm);
}

}  // namespace memblab
