// potential.cpp
#include "memblab/potential.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "memblab/quadrature.hpp"

namespace memblab {

namespace {

constexpr double derivative_clip = 1e6;  // logarithmic well diverges at the box edge

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double golden_refine_max(const std::function<double(double)>& f, double lo, double hi) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = f(d);
        }
    }
    return std::max(f(0.5 * (a + b)), std::max(fc, fd));
}

double grid_refine_max(const std::function<double(double)>& f, double lo, double hi, int n) {
    double best = -1.0;
    int best_i = 0;
    for (int i = 0; i <= n; ++i) {
        const double t = lo + (hi - lo) * i / n;
        const double v = f(t);
        if (v > best) { best = v; best_i = i; }
    }
    const double h = (hi - lo) / n;
    const double a = std::max(lo, lo + (hi - lo) * best_i / n - h);
    const double b = std::min(hi, lo + (hi - lo) * best_i / n + h);
    return std::max(best, golden_refine_max(f, a, b));
}

double grid_refine_min(const std::function<double(double)>& f, double lo, double hi, int n) {
    auto neg = [&](double t) { return -f(t); };
    return -grid_refine_max(neg, lo, hi, n);
}

void check_h1_h2(const DoubleWell& well, int grid_n) {
    if (std::fabs(well.w(-1.0)) > 1e-12 || std::fabs(well.w(1.0)) > 1e-12)
        throw std::invalid_argument("double well '" + well.name + "': W(+-1) must vanish");
    for (int i = 1; i < grid_n; ++i) {
        const double t = -1.0 + 2.0 * i / grid_n;
        if (!(well.w(t) > 0.0))
            throw std::invalid_argument("double well '" + well.name +
                                        "': W must be positive on (-1,1)");
    }
    if (!(well.c_w > 0.0))
        throw std::invalid_argument("double well '" + well.name + "': (H2) constant is zero");
}

double estimate_c_w(const std::function<double(double)>& w, int grid_n) {
    double c = std::numeric_limits<double>::infinity();
    for (int i = 1; i < grid_n; ++i) {
        const double t = -1.0 + 2.0 * i / grid_n;
        const double dist = std::min(std::fabs(t - 1.0), std::fabs(t + 1.0));
        c = std::min(c, w(t) / (dist * dist));
    }
    return 0.999 * c;
}

}  // namespace

double DoubleWell::evaluate(double x) const {
    assert(x >= -1.0 - 1e-9 && x <= 1.0 + 1e-9);
    return w(std::clamp(x, -1.0, 1.0));
}

double DoubleWell::derivative(double x) const {
    const double v = dw(std::clamp(x, -1.0, 1.0));
    return std::clamp(v, -derivative_clip, derivative_clip);
}

double DoubleWell::phi(double z) const {
    const double zc = std::clamp(z, -1.0, 1.0);
    auto sqrt_w = [this](double t) { return std::sqrt(std::max(0.0, w(t))); };
    return adaptive_simpson(sqrt_w, -1.0, zc, 1e-11);
}

DoubleWell builtin_well(const std::string& name) {
    DoubleWell well;
    well.name = name;
    if (name == "quartic") {
        well.w = [](double t) { const double q = 1.0 - t * t; return q * q; };
        well.dw = [](double t) { return -4.0 * t * (1.0 - t * t); };
    } else if (name == "quadratic") {
        well.w = [](double t) { return 1.0 - t * t; };
        well.dw = [](double t) { return -2.0 * t; };
    } else if (name == "logarithmic") {
        well.w = [](double t) {
            return -xlogx(1.0 - t) - xlogx(1.0 + t) + 2.0 * std::log(2.0);
        };
        well.dw = [](double t) {
            if (t >= 1.0) return -derivative_clip;
            if (t <= -1.0) return derivative_clip;
            return std::log((1.0 - t) / (1.0 + t));
        };
    } else {
        throw std::invalid_argument("builtin_well: unknown well '" + name + "'");
    }
    const int grid_n = 10000;
    well.max_w = grid_refine_max(well.w, -1.0, 1.0, grid_n);
    well.c_w = estimate_c_w(well.w, grid_n);
    const double min_w_half = grid_refine_min(well.w, -0.5, 0.5, grid_n);
    well.c_mm = std::max(min_w_half, std::sqrt(min_w_half));
    check_h1_h2(well, grid_n);
    return well;
}

double verify_h3(const DoubleWell& w, int grid_n) {
    // cumulative phi table over the check grid
    std::vector<double> z(static_cast<size_t>(grid_n) + 1), phi(static_cast<size_t>(grid_n) + 1);
    auto sqrt_w = [&w](double t) { return std::sqrt(std::max(0.0, w.w(t))); };
    phi[0] = 0.0;
    z[0] = -1.0;
    for (int i = 1; i <= grid_n; ++i) {
        z[static_cast<size_t>(i)] = -1.0 + 2.0 * i / grid_n;
        phi[static_cast<size_t>(i)] =
            phi[static_cast<size_t>(i - 1)] +
            adaptive_simpson(sqrt_w, z[static_cast<size_t>(i - 1)], z[static_cast<size_t>(i)], 1e-13);
    }
    const double guard = 10.0 * (2.0 / std::sqrt(w.c_w));
    double worst = 0.0;
    for (int i = 0; i <= grid_n; ++i) {
        for (int j = i + 1; j <= grid_n; ++j) {
            const double dphi = std::fabs(phi[static_cast<size_t>(j)] - phi[static_cast<size_t>(i)]);
            if (dphi < 1e-12) continue;
            const double dz = z[static_cast<size_t>(j)] - z[static_cast<size_t>(i)];
            const double ratio = dz * dz / dphi;
            if (ratio > guard)
                throw std::runtime_error("verify_h3: ratio " + std::to_string(ratio) +
                                         " exceeds guard " + std::to_string(guard) +
                                         " (broken well implementation)");
            worst = std::max(worst, ratio);
        }
    }
    return worst;
}

}  // namespace memblab
