// grid.cpp
#include "memblab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace memblab {

Grid1D::Grid1D(int n) : n_samples(n) {
    if (n < 8 || n % 2 != 0)
        throw std::invalid_argument("Grid1D: n_samples must be even and >= 8, got " +
                                    std::to_string(n));
}

SampledField::SampledField(Grid1D g, double fill)
    : grid(g), values(static_cast<size_t>(g.n_samples), fill) {}

SampledField::SampledField(Grid1D g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n_samples)
        throw std::invalid_argument("SampledField: values length must equal n_samples");
}

void Params::validate() const {
    auto bad = [](double x) { return !std::isfinite(x) || x < 0.0; };
    if (bad(b) || bad(sigma) || bad(kappa) || bad(lambda))
        throw std::invalid_argument("Params: all parameters must be finite and >= 0");
}

SampledField sample_function(Grid1D g, const std::function<double(double)>& fn) {
    SampledField f(g);
    for (int j = 0; j < g.n_samples; ++j) f.values[j] = fn(g.point(j));
    return f;
}

double integrate(const SampledField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / f.grid.n_samples;
}

double mean(const SampledField& f) { return integrate(f); }

double l2_norm_sq(const SampledField& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return s / f.grid.n_samples;
}

double inner(const SampledField& f, const SampledField& g) {
    if (f.size() != g.size()) throw std::invalid_argument("inner: size mismatch");
    double s = 0.0;
    for (int j = 0; j < f.size(); ++j) s += f.values[j] * g.values[j];
    return s / f.grid.n_samples;
}

double max_abs(const SampledField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::fabs(v));
    return m;
}

bool all_finite(const SampledField& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

SampledField operator+(const SampledField& a, const SampledField& b) {
    SampledField r = a;
    for (int j = 0; j < a.size(); ++j) r.values[j] += b.values[j];
    return r;
}

SampledField operator-(const SampledField& a, const SampledField& b) {
    SampledField r = a;
    for (int j = 0; j < a.size(); ++j) r.values[j] -= b.values[j];
    return r;
}

SampledField operator*(double c, const SampledField& a) {
    SampledField r = a;
    for (double& v : r.values) v *= c;
    return r;
}

ProjectionResult project_admissible(const SampledField& u, double tol, int max_rounds) {
    if (!all_finite(u))
        throw std::invalid_argument("project_admissible: input contains non-finite values");
    ProjectionResult res;
    res.field = u;
    auto& v = res.field.values;
    for (int round = 1; round <= max_rounds; ++round) {
        res.iterations = round;
        double update = 0.0;
        for (double& x : v) {
            const double c = std::clamp(x, -1.0, 1.0);
            update = std::max(update, std::fabs(c - x));
            x = c;
        }
        const double m = mean(res.field);
        update = std::max(update, std::fabs(m));
        for (double& x : v) x -= m;
        double box_excess = 0.0;
        for (double x : v) box_excess = std::max(box_excess, std::fabs(x) - 1.0);
        // run to an exact fixed point so the projection is idempotent
        if (box_excess <= tol && std::fabs(mean(res.field)) <= tol && update < 1e-15) {
            res.converged = true;
            return res;
        }
    }
    double box_excess = 0.0;
    for (double x : v) box_excess = std::max(box_excess, std::fabs(x) - 1.0);
    res.converged = box_excess <= tol && std::fabs(mean(res.field)) <= tol;
    return res;
}

bool is_admissible(const SampledField& u, double box_tol, double mean_tol) {
    return max_abs(u) <= 1.0 + box_tol && std::fabs(mean(u)) <= mean_tol;
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

double wrap_unit(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    return f;
}

SampledField dykstra_project(const SampledField& u, int iterations) {
    // Dykstra's alternating projections with correction terms; converges to
    // the metric projection onto box ∩ {mean 0}.
    const int n = u.size();
    std::vector<double> x = u.values, p(n, 0.0), q(n, 0.0);
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> y(n);
        for (int j = 0; j < n; ++j) y[j] = std::clamp(x[j] + p[j], -1.0, 1.0);
        for (int j = 0; j < n; ++j) p[j] = x[j] + p[j] - y[j];
        double m = 0.0;
        for (int j = 0; j < n; ++j) m += y[j] + q[j];
        m /= n;
        for (int j = 0; j < n; ++j) {
            double z = y[j] + q[j] - m;
            q[j] = y[j] + q[j] - z;
            x[j] = z;
        }
    }
    return SampledField(u.grid, x);
}

}  // namespace memblab
