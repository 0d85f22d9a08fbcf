// sweep.cpp
#include "memblab/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "memblab/constructions.hpp"
#include "memblab/io.hpp"
#include "memblab/seminorm.hpp"

namespace memblab {

double regime_threshold(const Params& p) {
    return std::max(std::max(p.b * p.sigma, p.b * p.kappa),
                    std::max(std::sqrt(p.b * p.sigma * p.kappa), std::sqrt(p.b) * p.kappa));
}

double default_c_big(const DoubleWell& w) {
    return std::max(2048.0, 256.0 * std::sqrt(2.0 * w.max_w));
}

double default_c_small(const DoubleWell& w) {
    const double c_int = fitted_c_int(w);
    return std::min(std::min(0.5, 1.0 / (c_int * std::sqrt(8.0))), w.c_mm / std::sqrt(2.0));
}

RegimeLabel classify(const Params& p, const DoubleWell& w, double c_small, double c_big) {
    if (c_small < 0.0) c_small = default_c_small(w);
    if (c_big < 0.0) c_big = default_c_big(w);
    RegimeLabel r;
    r.threshold = regime_threshold(p);
    const double l2 = p.lambda * p.lambda;
    if (l2 >= c_big * r.threshold) r.label = "supercritical";
    else if (l2 <= c_small * r.threshold) r.label = "subcritical";
    else r.label = "gap";
    return r;
}

namespace {

std::vector<double> parse_axis_values(const std::string& value, int line_no) {
    std::vector<double> out;
    if (value.rfind("logspace:", 0) == 0) {
        std::istringstream ss(value.substr(9));
        std::string tok;
        std::vector<std::string> parts;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() != 3)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": axis_values logspace needs logspace:lo:hi:n");
        const double lo = std::stod(parts[0]);
        const double hi = std::stod(parts[1]);
        const int n = std::stoi(parts[2]);
        if (!(lo > 0.0) || !(hi > 0.0) || n < 1)
            throw ConfigError("line " + std::to_string(line_no) + ": invalid logspace range");
        for (int i = 0; i < n; ++i) {
            const double t = (n == 1) ? 0.0 : static_cast<double>(i) / (n - 1);
            out.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
        }
        return out;
    }
    std::istringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw ConfigError("line " + std::to_string(line_no) + ": bad axis value '" + tok + "'");
        }
    }
    return out;
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_axis_values = false;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto not_space = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), not_space));
        line.erase(std::find_if(line.rbegin(), line.rend(), not_space).base(), line.end());
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        key.erase(std::find_if(key.rbegin(), key.rend(), not_space).base(), key.end());
        value.erase(value.begin(), std::find_if(value.begin(), value.end(), not_space));
        try {
            if (key == "well") cfg.well = value;
            else if (key == "grid_n") cfg.grid_n = std::stoi(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "axis") cfg.axis = value;
            else if (key == "axis_values") { cfg.axis_values = parse_axis_values(value, line_no); have_axis_values = true; }
            else if (key == "b") cfg.base.b = std::stod(value);
            else if (key == "sigma") cfg.base.sigma = std::stod(value);
            else if (key == "kappa") cfg.base.kappa = std::stod(value);
            else if (key == "lambda") cfg.base.lambda = std::stod(value);
            else if (key == "max_iters") cfg.max_iters = std::stoi(value);
            else if (key == "tol_grad") cfg.tol_grad = std::stod(value);
            else if (key == "workers") cfg.workers = std::stoi(value);
            else if (key == "c_small") cfg.c_small = std::stod(value);
            else if (key == "c_big") cfg.c_big = std::stod(value);
            else throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            throw ConfigError("line " + std::to_string(line_no) + ": cannot parse value for '" +
                              key + "'");
        }
    }
    if (cfg.axis != "b" && cfg.axis != "sigma" && cfg.axis != "kappa" && cfg.axis != "lambda")
        throw ConfigError("field 'axis': must be one of b, sigma, kappa, lambda");
    if (!have_axis_values || cfg.axis_values.empty())
        throw ConfigError("field 'axis_values': required and non-empty");
    if (cfg.grid_n < 8 || cfg.grid_n % 2 != 0)
        throw ConfigError("field 'grid_n': must be even and >= 8");
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return parse_sweep_config(text);
}

namespace {

Params point_params(const SweepConfig& cfg, double axis_value) {
    Params p = cfg.base;
    if (cfg.axis == "b") p.b = axis_value;
    else if (cfg.axis == "sigma") p.sigma = axis_value;
    else if (cfg.axis == "kappa") p.kappa = axis_value;
    else p.lambda = axis_value;
    return p;
}

double construction_energy_at(const Params& p, const DoubleWell& w, int grid_n) {
    // flat
    double best = w.evaluate(0.0);
    // single transition (h = 0)
    {
        const Profile u = single_transition_profile(std::min(p.b, 1.0));
        const EnergyBreakdown e = measured_breakdown(u, zero_height_profile(), p, w, grid_n);
        best = std::min(best, e.total);
    }
    // oscillatory at the regime selection
    if (p.kappa > 0.0) {
        const auto [n, eps] = regime_select(p, w);
        if (grid_n >= 32.0 * n / eps) {
            Grid1D g(grid_n);
            const OscillatoryAnsatz a = oscillatory(n, eps, p, g);
            const EnergyBreakdown e = measured_breakdown(a, p, w, grid_n);
            best = std::min(best, e.total);
        }
    }
    return best;
}

}  // namespace

SweepOutcome run_sweep(const SweepConfig& cfg) {
    const DoubleWell w = builtin_well(cfg.well);
    const double c_small = cfg.c_small >= 0.0 ? cfg.c_small : default_c_small(w);
    const double c_big = cfg.c_big >= 0.0 ? cfg.c_big : default_c_big(w);

    SweepOutcome out;
    out.points.resize(cfg.axis_values.size());

    auto run_point = [&](size_t i) {
        const Params p = point_params(cfg, cfg.axis_values[i]);
        SweepPointResult r;
        r.params = p;
        r.regime = classify(p, w, c_small, c_big);
        r.grid_n = cfg.grid_n;
        r.lower_bound_young = p.kappa > 0.0
                                  ? -p.lambda * p.lambda / (2.0 * p.kappa)
                                  : -std::numeric_limits<double>::infinity();
        r.lower_bound_mm = w.c_mm * std::min(1.0, std::sqrt(0.5 * p.b));
        r.construction_energy = construction_energy_at(p, w, cfg.grid_n);
        MinimizeOptions opts;
        opts.grid_n = cfg.grid_n;
        opts.max_iters = cfg.max_iters;
        opts.tol_grad = cfg.tol_grad;
        opts.seed = cfg.seed + 1000 * i;
        MinimizeResult m = minimize(p, w, opts);
        r.min_energy = m.best_energy;
        r.converged_starts = m.converged_starts;
        out.points[i] = r;
    };

    const int workers = std::max(1, cfg.workers);
    if (workers == 1) {
        for (size_t i = 0; i < out.points.size(); ++i) run_point(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (size_t i = static_cast<size_t>(t); i < out.points.size(); i += static_cast<size_t>(workers))
                    run_point(i);
            });
        for (std::thread& th : pool) th.join();
    }

    for (const SweepPointResult& r : out.points) {
        const bool ok = r.lower_bound_young - 1e-6 <= r.min_energy &&
                        r.min_energy <= r.construction_energy + 1e-9;
        if (!ok) ++out.invariant_violations;
    }
    return out;
}

FitResult fit_slope(const std::vector<double>& xs, const std::vector<double>& ys, bool signed_logs) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw std::invalid_argument("fit_slope: need >= 3 matching points");
    if (signed_logs) {
        const bool pos = ys.front() > 0.0;
        for (double y : ys)
            if ((y > 0.0) != pos || y == 0.0)
                throw std::invalid_argument("fit_slope: ys change sign under the signed flag");
    }
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0)) throw std::invalid_argument("fit_slope: xs must be positive");
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(std::fabs(ys[i])));
    }
    const double n = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
        syy += ly[i] * ly[i];
    }
    FitResult r;
    const double denom = n * sxx - sx * sx;
    r.slope = (n * sxy - sx * sy) / denom;
    const double ss_tot = syy - sy * sy / n;
    const double intercept = (sy - r.slope * sx) / n;
    double ss_res = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - (intercept + r.slope * lx[i]);
        ss_res += e * e;
    }
    r.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return r;
}

namespace {

std::string regime_diagram_svg(const std::vector<SweepPointResult>& points, double c_small,
                               double c_big) {
    // log lambda^2 vs log threshold; the gap band lies between the two lines
    // y = x + log10(c_small) and y = x + log10(c_big).
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    std::vector<std::pair<double, double>> pts;
    for (const SweepPointResult& r : points) {
        const double x = std::log10(std::max(r.regime.threshold, 1e-300));
        const double y = std::log10(std::max(r.params.lambda * r.params.lambda, 1e-300));
        pts.push_back({x, y});
        xmin = std::min(xmin, x); xmax = std::max(xmax, x);
        ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
    const double lc = std::log10(c_small), lC = std::log10(c_big);
    ymin = std::min(ymin, xmin + lc) - 0.5; ymax = std::max(ymax, xmax + lC) + 0.5;
    xmin -= 0.5; xmax += 0.5;
    const double W = 640.0, H = 480.0, margin = 50.0;
    auto X = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (W - 2 * margin); };
    auto Y = [&](double y) { return H - margin - (y - ymin) / (ymax - ymin) * (H - 2 * margin); };
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    // gap band polygon between the two threshold lines
    svg += "<polygon class=\"gap-band\" fill=\"#dddddd\" opacity=\"0.7\" points=\"";
    svg += fmt_double(X(xmin)) + "," + fmt_double(Y(xmin + lc)) + " ";
    svg += fmt_double(X(xmax)) + "," + fmt_double(Y(xmax + lc)) + " ";
    svg += fmt_double(X(xmax)) + "," + fmt_double(Y(xmax + lC)) + " ";
    svg += fmt_double(X(xmin)) + "," + fmt_double(Y(xmin + lC));
    svg += "\"/>\n";
    for (const double off : {lc, lC}) {
        svg += "<line x1=\"" + fmt_double(X(xmin)) + "\" y1=\"" + fmt_double(Y(xmin + off)) +
               "\" x2=\"" + fmt_double(X(xmax)) + "\" y2=\"" + fmt_double(Y(xmax + off)) +
               "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    }
    svg += "<text x=\"" + fmt_double(W / 2) +
           "\" y=\"470\" text-anchor=\"middle\" font-size=\"13\">log10 threshold</text>\n";
    svg += "<text x=\"15\" y=\"" + fmt_double(H / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 15 " +
           fmt_double(H / 2) + ")\">log10 lambda^2</text>\n";
    for (size_t i = 0; i < points.size(); ++i) {
        const std::string& label = points[i].regime.label;
        const char* fill = label == "supercritical" ? "#d62728"
                            : label == "subcritical" ? "#1f77b4" : "#7f7f7f";
        svg += "<circle class=\"pt-" + label + "\" cx=\"" + fmt_double(X(pts[i].first)) +
               "\" cy=\"" + fmt_double(Y(pts[i].second)) + "\" r=\"4\" fill=\"" + fill + "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace

void emit_report(const SweepOutcome& outcome, const SweepConfig& cfg, const std::string& out_dir) {
    if (outcome.points.empty()) throw std::invalid_argument("emit_report: no results");
    std::filesystem::create_directories(out_dir);

    std::string csv = csv_row({"b", "sigma", "kappa", "lambda", "regime", "threshold",
                               "min_energy", "construction_energy", "lower_bound_young",
                               "lower_bound_mm", "grid_n", "converged_starts"});
    for (const SweepPointResult& r : outcome.points) {
        csv += csv_row({fmt_double(r.params.b), fmt_double(r.params.sigma),
                        fmt_double(r.params.kappa), fmt_double(r.params.lambda), r.regime.label,
                        fmt_double(r.regime.threshold), fmt_double(r.min_energy),
                        fmt_double(r.construction_energy), fmt_double(r.lower_bound_young),
                        fmt_double(r.lower_bound_mm), std::to_string(r.grid_n),
                        std::to_string(r.converged_starts)});
    }
    write_text_file(out_dir + "/results.csv", csv);

    nlohmann::ordered_json summary;
    summary["axis"] = cfg.axis;
    summary["well"] = cfg.well;
    summary["points"] = outcome.points.size();
    std::map<std::string, int> counts;
    for (const SweepPointResult& r : outcome.points) counts[r.regime.label] += 1;
    summary["regime_counts"] = counts;
    summary["invariant_violations"] = outcome.invariant_violations;
    std::vector<double> xs, ys;
    for (const SweepPointResult& r : outcome.points) {
        double axis_value = cfg.axis == "b" ? r.params.b
                            : cfg.axis == "sigma" ? r.params.sigma
                            : cfg.axis == "kappa" ? r.params.kappa : r.params.lambda;
        xs.push_back(axis_value);
        ys.push_back(r.min_energy);
    }
    bool one_signed = true;
    for (double y : ys) one_signed = one_signed && (y > 0.0) == (ys.front() > 0.0) && y != 0.0;
    if (xs.size() >= 3 && one_signed) {
        const FitResult fr = fit_slope(xs, ys, true);
        summary["fitted_slope"] = fr.slope;
        summary["fit_r2"] = fr.r2;
    } else {
        summary["fitted_slope"] = nullptr;
        summary["fit_r2"] = nullptr;
    }
    const DoubleWell w = builtin_well(cfg.well);
    const double c_small = cfg.c_small >= 0.0 ? cfg.c_small : default_c_small(w);
    const double c_big = cfg.c_big >= 0.0 ? cfg.c_big : default_c_big(w);
    summary["c_small"] = c_small;
    summary["c_big"] = c_big;
    write_text_file(out_dir + "/summary.json", summary.dump(2) + "\n");

    write_text_file(out_dir + "/regime_diagram.svg",
                    regime_diagram_svg(outcome.points, c_small, c_big));
}

}  // namespace memblab
