// constructions.cpp
#include "memblab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace memblab {

namespace {

void require_resolution(int n_samples, double needed, const char* who) {
    if (n_samples < needed)
        throw std::invalid_argument(std::string(who) + ": grid under-resolves the layers, need N >= " +
                                    std::to_string(static_cast<long long>(std::ceil(needed))) +
                                    ", got " + std::to_string(n_samples));
}

// Composite 3-point Gauss over [0,1) split at the given breakpoints, with
// roughly quad_n nodes in total. Nodes are strictly interior to each piece,
// so piecewise evaluators are sampled unambiguously.
double integrate_piecewise(const std::function<double(double)>& f,
                           const std::vector<double>& breaks, int quad_n) {
    std::vector<double> pts;
    for (double b : breaks) pts.push_back(wrap_unit(b));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::fabs(a - b) < 1e-14; }),
              pts.end());
    if (pts.empty()) pts.push_back(0.0);
    const double gauss_x = std::sqrt(0.6) * 0.5;  // 3-point Gauss on [-1/2, 1/2]
    const double w_mid = 8.0 / 18.0, w_out = 5.0 / 18.0;
    double acc = 0.0;
    const size_t m = pts.size();
    for (size_t i = 0; i < m; ++i) {
        const double a = pts[i];
        const double b = (i + 1 < m) ? pts[i + 1] : pts[0] + 1.0;
        const double len = b - a;
        if (len < 1e-14) continue;
        const int cells = std::max(1, static_cast<int>(std::ceil(len * quad_n)));
        const double h = len / cells;
        for (int c = 0; c < cells; ++c) {
            const double mid = a + (c + 0.5) * h;
            acc += h * (w_out * f(wrap_unit(mid - gauss_x * h)) + w_mid * f(wrap_unit(mid)) +
                        w_out * f(wrap_unit(mid + gauss_x * h)));
        }
    }
    return acc;
}

std::vector<double> merge_breaks(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

HeightProfile zero_height_profile() {
    auto z = [](double) { return 0.0; };
    return HeightProfile{z, z, z, {}};
}

std::pair<SampledField, SampledField> flat(Grid1D g) {
    return {SampledField(g, 0.0), SampledField(g, 0.0)};
}

Profile single_transition_profile(double b) {
    if (!(b > 0.0) || b > 1.0)
        throw std::invalid_argument("single_transition: b must lie in (0,1]");
    const double s = std::sqrt(b);
    auto value = [s](double x) {
        const double t = wrap_unit(x);
        if (t < 0.5 * s) return 4.0 / s * t - 1.0;
        if (t < 0.5) return 1.0;
        if (t < 0.5 + 0.5 * s) return -4.0 / s * t + 1.0 + 2.0 / s;
        return -1.0;
    };
    auto deriv = [s](double x) {
        const double t = wrap_unit(x);
        if (t < 0.5 * s) return 4.0 / s;
        if (t < 0.5) return 0.0;
        if (t < 0.5 + 0.5 * s) return -4.0 / s;
        return 0.0;
    };
    return Profile{value, deriv, {0.0, 0.5 * s, 0.5, 0.5 + 0.5 * s}};
}

SampledField single_transition(double b, Grid1D g) {
    require_resolution(g.n_samples, 32.0 / std::sqrt(b), "single_transition");
    return sample_admissible(single_transition_profile(b), g);
}

namespace {

double osc_u_value(double x, int n, double eps) {
    const double z = 2.0 * n * wrap_unit(x);
    const long k_near = std::lround(z);
    const double d = z - static_cast<double>(k_near);
    if (std::fabs(d) <= 0.5 * eps) {
        const double slope_sign = (k_near % 2 != 0) ? 1.0 : -1.0;
        return slope_sign * d * 2.0 / eps;
    }
    const long k_seg = static_cast<long>(std::floor(z));
    return (k_seg % 2 != 0) ? 1.0 : -1.0;
}

double osc_u_deriv(double x, int n, double eps) {
    const double z = 2.0 * n * wrap_unit(x);
    const long k_near = std::lround(z);
    const double d = z - static_cast<double>(k_near);
    if (std::fabs(d) <= 0.5 * eps) {
        const double slope_sign = (k_near % 2 != 0) ? 1.0 : -1.0;
        return slope_sign * 4.0 * n / eps;
    }
    return 0.0;
}

double h_base(double y) {
    return y < 0.5 ? 0.5 * y * (y - 0.5) : -0.5 * (y - 1.0) * (y - 0.5);
}
double h_base_d(double y) { return y < 0.5 ? y - 0.25 : -y + 0.75; }
double h_base_d2(double y) { return y < 0.5 ? 1.0 : -1.0; }

}  // namespace

OscillatoryAnsatz oscillatory(int n, double epsilon, const Params& p, Grid1D g) {
    if (n < 1) throw std::invalid_argument("oscillatory: n must be >= 1");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("oscillatory: epsilon must lie in (0,1]");
    if (p.kappa == 0.0 && p.sigma == 0.0)
        throw std::invalid_argument("oscillatory: kappa = sigma = 0 is degenerate");
    require_resolution(g.n_samples, 32.0 * n / epsilon, "oscillatory");

    OscillatoryAnsatz a;
    a.n = n;
    a.epsilon = epsilon;
    a.mu = p.lambda * (1.0 - 0.5 * epsilon) / (p.kappa * n * n + p.sigma / 48.0);

    a.u_prof.value = [n, epsilon](double x) { return osc_u_value(x, n, epsilon); };
    a.u_prof.deriv = [n, epsilon](double x) { return osc_u_deriv(x, n, epsilon); };
    for (int k = 0; k < 2 * n; ++k) {
        const double center = k / (2.0 * n);
        a.u_prof.breaks.push_back(wrap_unit(center - epsilon / (4.0 * n)));
        a.u_prof.breaks.push_back(wrap_unit(center + epsilon / (4.0 * n)));
    }
    const double mu = a.mu;
    const double dn = n;
    a.h_prof.value = [mu, dn](double x) { return mu * h_base(wrap_unit(dn * wrap_unit(x))); };
    a.h_prof.deriv = [mu, dn](double x) { return mu * dn * h_base_d(wrap_unit(dn * wrap_unit(x))); };
    a.h_prof.second = [mu, dn](double x) {
        return mu * dn * dn * h_base_d2(wrap_unit(dn * wrap_unit(x)));
    };
    for (int k = 0; k < 2 * n; ++k) a.h_prof.breaks.push_back(k / (2.0 * n));

    a.u = sample_admissible(a.u_prof, g);
    a.h = sample_function(g, a.h_prof.value);
    const double hm = mean(a.h);
    for (double& v : a.h.values) v -= hm;
    return a;
}

double ansatz_bound(int n, double epsilon, const Params& p, const DoubleWell& w) {
    const double n2 = static_cast<double>(n) * n;
    const double shape = 1.0 - 0.5 * epsilon;
    return w.max_w * epsilon + 8.0 * p.b * n2 / epsilon -
           24.0 * p.lambda * p.lambda * shape * shape * n2 / (p.sigma + 48.0 * p.kappa * n2);
}

std::pair<int, double> regime_select(const Params& p, const DoubleWell& w) {
    if (!(p.kappa > 0.0)) throw std::invalid_argument("regime_select: kappa must be positive");
    const double K = w.max_w;
    int n = 1;
    double eps = 1.0;
    if (p.sigma <= p.kappa) {
        n = 1;
        eps = (K <= 8.0 * p.b) ? 1.0 : std::sqrt(8.0 * p.b / K);
    } else {
        n = static_cast<int>(std::ceil(std::sqrt(p.sigma / p.kappa)));
        eps = (K <= 32.0 * p.b * p.sigma / p.kappa)
                  ? 1.0
                  : std::sqrt(32.0 * p.b * p.sigma / (K * p.kappa));
    }
    eps = std::min(eps, 1.0);
    return {n, eps};
}

Profile udelta_profile(double delta) {
    if (!(delta > 0.0) || delta >= 0.5)
        throw std::invalid_argument("udelta_profile: delta must lie in (0, 1/2)");
    auto value = [delta](double x) {
        const double t = wrap_unit(x);
        if (t < delta) return -2.0 / delta * t + 1.0;
        if (t < 0.5) return -1.0;
        if (t < 0.5 + delta) return 2.0 / delta * (t - 0.5) - 1.0;
        return 1.0;
    };
    auto deriv = [delta](double x) {
        const double t = wrap_unit(x);
        if (t < delta) return -2.0 / delta;
        if (t < 0.5) return 0.0;
        if (t < 0.5 + delta) return 2.0 / delta;
        return 0.0;
    };
    return Profile{value, deriv, {0.0, delta, 0.5, 0.5 + delta}};
}

SampledField udelta_sampled(double delta, Grid1D g) {
    if (!(delta > 0.0) || delta > 0.125)
        throw std::invalid_argument("udelta_sampled: delta must lie in (0, 1/8]");
    require_resolution(g.n_samples, 64.0 / delta, "udelta_sampled");
    return sample_admissible(udelta_profile(delta), g);
}

double udelta_h12_lower_bound(double delta) {
    return -8.0 * (0.25 - 0.5 * delta) - 4.0 * std::log(delta / (0.25 + 0.5 * delta));
}

Profile mollified_step_profile(double epsilon) {
    if (!(epsilon > 0.0) || epsilon >= 0.125)
        throw std::invalid_argument("mollified_step: epsilon must lie in (0, 1/8)");
    auto value = [epsilon](double x) {
        const double t = wrap_unit(x);
        if (t < 0.25 - epsilon) return 1.0;
        if (t < 0.25 + epsilon) return (0.25 - t) / epsilon;
        if (t < 0.75 - epsilon) return -1.0;
        if (t < 0.75 + epsilon) return (t - 0.75) / epsilon;
        return 1.0;
    };
    auto deriv = [epsilon](double x) {
        const double t = wrap_unit(x);
        if (t >= 0.25 - epsilon && t < 0.25 + epsilon) return -1.0 / epsilon;
        if (t >= 0.75 - epsilon && t < 0.75 + epsilon) return 1.0 / epsilon;
        return 0.0;
    };
    return Profile{value, deriv,
                   {0.25 - epsilon, 0.25 + epsilon, 0.75 - epsilon, 0.75 + epsilon}};
}

SampledField mollified_step(double epsilon, Grid1D g) {
    require_resolution(g.n_samples, 64.0 / epsilon, "mollified_step");
    return sample_admissible(mollified_step_profile(epsilon), g);
}

EnergyBreakdown measured_breakdown(const Profile& u, const HeightProfile& h, const Params& p,
                                   const DoubleWell& w, int quad_n) {
    if (quad_n < 8) throw std::invalid_argument("measured_breakdown: quad_n too small");
    const std::vector<double> all = merge_breaks(u.breaks, h.breaks);
    EnergyBreakdown e;
    e.well_term = integrate_piecewise([&](double x) { return w.evaluate(u.value(x)); }, all, quad_n);
    e.exchange_term = 0.5 * p.b *
        integrate_piecewise([&](double x) { const double d = u.deriv(x); return d * d; }, all, quad_n);
    e.tension_term = 0.5 * p.sigma *
        integrate_piecewise([&](double x) { const double d = h.deriv(x); return d * d; }, all, quad_n);
    e.bending_term = 0.5 * p.kappa *
        integrate_piecewise([&](double x) { const double d = h.second(x); return d * d; }, all, quad_n);
    e.coupling_term = p.lambda *
        integrate_piecewise([&](double x) { return u.value(x) * h.second(x); }, all, quad_n);
    e.total = e.well_term + e.exchange_term + e.tension_term + e.bending_term + e.coupling_term;
    return e;
}

EnergyBreakdown measured_breakdown(const OscillatoryAnsatz& a, const Params& p,
                                   const DoubleWell& w, int quad_n) {
    return measured_breakdown(a.u_prof, a.h_prof, p, w, quad_n);
}

double kappa0_probe_energy(double epsilon, const Params& p, const DoubleWell& w, int quad_n) {
    if (!(p.sigma > 0.0)) throw std::invalid_argument("kappa0_probe_energy: sigma must be positive");
    const Profile u = mollified_step_profile(epsilon);
    const double well =
        integrate_piecewise([&](double x) { return w.evaluate(u.value(x)); }, u.breaks, quad_n);
    const double du2 = integrate_piecewise(
        [&](double x) { const double d = u.deriv(x); return d * d; }, u.breaks, quad_n);
    return well + 0.5 * (p.b - p.lambda * p.lambda / p.sigma) * du2;
}

SampledField sample_admissible(const Profile& prof, Grid1D g) {
    SampledField u(g);
    for (int j = 0; j < g.n_samples; ++j)
        u.values[j] = std::clamp(prof.value(g.point(j)), -1.0, 1.0);
    ProjectionResult pr = project_admissible(u, 1e-12, 500);
    if (!pr.converged)
        throw std::runtime_error("sample_admissible: admissibility snap did not converge");
    return pr.field;
}

}  // namespace memblab
