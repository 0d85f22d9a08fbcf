// memblab_main.cpp
// Command-line front end: evaluate, minimize, construct, interpolate,
// clement, sweep and classify subcommands.
// Exit codes: 0 success, 2 config/usage error, 3 invariant violation.
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "memblab/clement.hpp"
#include "memblab/constructions.hpp"
#include "memblab/energy.hpp"
#include "memblab/io.hpp"
#include "memblab/minimize.hpp"
#include "memblab/seminorm.hpp"
#include "memblab/sweep.hpp"

using nlohmann::ordered_json;

namespace {

using namespace memblab;

ordered_json breakdown_json(const EnergyBreakdown& e) {
    ordered_json j;
    j["well_term"] = e.well_term;
    j["exchange_term"] = e.exchange_term;
    j["tension_term"] = e.tension_term;
    j["bending_term"] = e.bending_term;
    j["coupling_term"] = e.coupling_term;
    j["total"] = e.total;
    return j;
}

std::string field_csv(const SampledField& u, const SampledField& h) {
    std::string csv = csv_row({"x", "u", "h"});
    for (int j = 0; j < u.size(); ++j)
        csv += csv_row({fmt_double(u.grid.point(j)), fmt_double(u.values[j]),
                        fmt_double(h.values[j])});
    return csv;
}

struct XuhData {
    std::vector<double> u, h;
};

XuhData read_xuh_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    XuhData d;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) { first = false; continue; }  // header
        std::istringstream row(line);
        std::string tok;
        std::vector<double> vals;
        while (std::getline(row, tok, ',')) vals.push_back(std::stod(tok));
        if (vals.size() < 3) throw std::runtime_error("input CSV needs x,u,h columns");
        d.u.push_back(vals[1]);
        d.h.push_back(vals[2]);
    }
    return d;
}

void write_or_print(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) std::cout << content;
    else write_text_file(out_path, content);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D coupled membrane energy laboratory"};
    app.require_subcommand(1);

    std::string well_name = "quartic";
    double b = 1.0, sigma = 1.0, kappa = 1.0, lambda = 0.0;
    int grid_n = 1024;
    uint64_t seed = 1;
    int workers = 1;
    std::string out_dir = "out";

    auto add_params = [&](CLI::App* cmd) {
        cmd->add_option("--well", well_name, "double well: quartic|quadratic|logarithmic");
        cmd->add_option("--b", b, "line tension weight");
        cmd->add_option("--sigma", sigma, "surface tension");
        cmd->add_option("--kappa", kappa, "bending rigidity");
        cmd->add_option("--lambda", lambda, "coupling strength");
    };

    // evaluate
    auto* c_eval = app.add_subcommand("evaluate", "energy breakdown of a sampled (u,h) pair");
    std::string eval_input;
    std::string eval_out;
    c_eval->add_option("--input", eval_input, "CSV with x,u,h columns")->required();
    c_eval->add_option("--out", eval_out, "output JSON path (default stdout)");
    add_params(c_eval);

    // minimize
    auto* c_min = app.add_subcommand("minimize", "multi-start constrained minimization");
    int min_iters = 600;
    double min_tol = 1e-7;
    std::string starts_spec;
    c_min->add_option("--grid-n", grid_n, "grid resolution N");
    c_min->add_option("--max-iters", min_iters, "iteration cap per start");
    c_min->add_option("--tol-grad", min_tol, "projected-gradient tolerance");
    c_min->add_option("--seed", seed, "seed for random starts");
    c_min->add_option("--workers", workers, "parallel starts");
    c_min->add_option("--starts", starts_spec,
                      "comma list: flat | single_transition | oscillatory:n:eps | random:seed "
                      "(default: full multi-start set)");
    c_min->add_option("--out", out_dir, "output directory");
    add_params(c_min);

    // construct
    auto* c_con = app.add_subcommand("construct", "emit an analytic construction as CSV + JSON");
    std::string kind = "oscillatory";
    int osc_n = 1;
    double osc_eps = 1.0, delta = 0.05, moll_eps = 0.05;
    c_con->add_option("--kind", kind,
                      "flat|single-transition|oscillatory|udelta|mollified-step");
    c_con->add_option("--n", osc_n, "oscillatory half-period count");
    c_con->add_option("--epsilon", osc_eps, "oscillatory transition fraction");
    c_con->add_option("--delta", delta, "udelta ramp width");
    c_con->add_option("--moll-eps", moll_eps, "mollified-step ramp half-width");
    c_con->add_option("--grid-n", grid_n, "grid resolution N");
    c_con->add_option("--out", out_dir, "output directory");
    add_params(c_con);

    // interpolate
    auto* c_int = app.add_subcommand("interpolate", "three-case interpolation report on u_delta");
    double s_value = 0.5;
    std::string delta_list = "0.4,0.2,0.1,0.05,0.02,0.01,0.005,0.002,0.001";
    c_int->add_option("--s", s_value, "fractional order s in (0,1)");
    c_int->add_option("--deltas", delta_list, "comma list of delta values");
    c_int->add_option("--out", out_dir, "output directory");
    add_params(c_int);

    // clement
    auto* c_cle = app.add_subcommand("clement", "min-kernel inequality rows over (l, M, delta)");
    std::string l_list = "8,16,32", m_list = "4,8,16",
                cle_deltas = "0.02,0.01,0.005,0.002,0.001,0.0005,0.0002";
    c_cle->add_option("--l", l_list, "triangulation resolutions");
    c_cle->add_option("--m", m_list, "kernel scales M");
    c_cle->add_option("--deltas", cle_deltas, "delta family");
    c_cle->add_option("--out", out_dir, "output directory");
    add_params(c_cle);

    // sweep
    auto* c_swp = app.add_subcommand("sweep", "configuration-driven parameter sweep");
    std::string config_path;
    c_swp->add_option("--config", config_path, "sweep config file")->required();
    c_swp->add_option("--out", out_dir, "output directory");
    c_swp->add_option("--workers", workers, "parallel sweep points");
    c_swp->add_option("--seed", seed, "seed override (0 = keep config seed)");

    // classify
    auto* c_cls = app.add_subcommand("classify", "regime label for one parameter point");
    double c_small = -1.0, c_big = -1.0;
    c_cls->add_option("--c-small", c_small, "subcritical constant (default: fitted)");
    c_cls->add_option("--c-big", c_big, "supercritical constant (default: from max W)");
    add_params(c_cls);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_eval) {
            const DoubleWell w = builtin_well(well_name);
            const Params p{b, sigma, kappa, lambda};
            const XuhData d = read_xuh_csv(eval_input);
            const int n = static_cast<int>(d.u.size());
            SampledField u(Grid1D(n), d.u), h(Grid1D(n), d.h);
            const EnergyBreakdown e = evaluate_full(u, h, p, w);
            write_or_print(eval_out, breakdown_json(e).dump(2) + "\n");
        } else if (*c_min) {
            const DoubleWell w = builtin_well(well_name);
            const Params p{b, sigma, kappa, lambda};
            MinimizeOptions opts;
            opts.grid_n = grid_n;
            opts.max_iters = min_iters;
            opts.tol_grad = min_tol;
            opts.seed = seed;
            opts.workers = workers;
            if (!starts_spec.empty()) {
                std::istringstream ss(starts_spec);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    StartSpec s;
                    std::istringstream parts(tok);
                    std::string head;
                    std::getline(parts, head, ':');
                    s.kind = head;
                    if (head == "oscillatory") {
                        std::string a, e;
                        if (!std::getline(parts, a, ':') || !std::getline(parts, e, ':')) {
                            std::cerr << "bad start spec '" << tok << "' (oscillatory:n:eps)\n";
                            return 2;
                        }
                        s.n = std::stoi(a);
                        s.epsilon = std::stod(e);
                    } else if (head == "random") {
                        std::string sd;
                        s.seed = std::getline(parts, sd, ':') ? std::stoull(sd) : seed;
                    } else if (head != "flat" && head != "single_transition") {
                        std::cerr << "unknown start kind '" << head << "'\n";
                        return 2;
                    }
                    opts.starts.push_back(s);
                }
            }
            const MinimizeResult r = minimize(p, w, opts);
            std::filesystem::create_directories(out_dir);
            ordered_json j;
            j["best_energy"] = r.best_energy;
            j["converged_starts"] = r.converged_starts;
            j["per_start"] = ordered_json::array();
            for (const StartResult& sr : r.per_start) {
                ordered_json e;
                e["start"] = sr.descriptor;
                e["final_energy"] = sr.skipped ? nullptr : ordered_json(sr.final_energy);
                e["iterations"] = sr.iterations;
                e["converged"] = sr.converged;
                e["skipped"] = sr.skipped;
                j["per_start"].push_back(e);
            }
            write_text_file(out_dir + "/minimize.json", j.dump(2) + "\n");
            write_text_file(out_dir + "/minimizer.csv", field_csv(r.best_u, r.best_h));
            std::cout << "best_energy = " << fmt_double(r.best_energy) << "\n";
        } else if (*c_con) {
            const DoubleWell w = builtin_well(well_name);
            const Params p{b, sigma, kappa, lambda};
            const Grid1D g(grid_n);
            std::filesystem::create_directories(out_dir);
            ordered_json meta;
            SampledField u(g, 0.0), h(g, 0.0);
            if (kind == "flat") {
                std::tie(u, h) = flat(g);
                meta["bound"] = w.evaluate(0.0);
                meta["measured"] =
                    breakdown_json(measured_breakdown(Profile{[](double) { return 0.0; },
                                                              [](double) { return 0.0; }},
                                                      zero_height_profile(), p, w, grid_n));
            } else if (kind == "single-transition") {
                u = single_transition(std::min(b, 1.0), g);
                const Profile prof = single_transition_profile(std::min(b, 1.0));
                meta["bound"] = (8.0 + w.max_w) * std::sqrt(std::min(b, 1.0));
                meta["measured"] =
                    breakdown_json(measured_breakdown(prof, zero_height_profile(), p, w, grid_n));
            } else if (kind == "oscillatory") {
                const OscillatoryAnsatz a = oscillatory(osc_n, osc_eps, p, g);
                u = a.u;
                h = a.h;
                meta["n"] = a.n;
                meta["epsilon"] = a.epsilon;
                meta["mu"] = a.mu;
                meta["bound"] = ansatz_bound(osc_n, osc_eps, p, w);
                meta["measured"] = breakdown_json(measured_breakdown(a, p, w, grid_n));
            } else if (kind == "udelta") {
                u = udelta_sampled(delta, g);
                meta["delta"] = delta;
                meta["h12_lower_bound"] = udelta_h12_lower_bound(delta);
                meta["mm_upper_bound"] = 2.0 * w.max_w + 8.0;
                meta["mm"] = modica_mortola(u, delta, w);
            } else if (kind == "mollified-step") {
                u = mollified_step(moll_eps, g);
                meta["epsilon"] = moll_eps;
                if (kappa == 0.0 && sigma > 0.0)
                    meta["kappa0_energy"] = kappa0_probe_energy(moll_eps, p, w, grid_n);
            } else {
                std::cerr << "unknown construction kind '" << kind << "'\n";
                return 2;
            }
            write_text_file(out_dir + "/construction.csv", field_csv(u, h));
            write_text_file(out_dir + "/construction.json", meta.dump(2) + "\n");
        } else if (*c_int) {
            const DoubleWell w = builtin_well(well_name);
            std::vector<double> deltas;
            std::istringstream ss(delta_list);
            std::string tok;
            while (std::getline(ss, tok, ',')) deltas.push_back(std::stod(tok));
            auto family = [&](double d) {
                const int n = next_pow2(std::max(256, static_cast<int>(std::ceil(64.0 / d))));
                return sample_admissible(udelta_profile(d), Grid1D(n));
            };
            const InterpolationReport rep = interpolation_report(family, s_value, deltas, w);
            std::filesystem::create_directories(out_dir);
            std::string csv = csv_row({"delta", "raw_ratio", "normalized_ratio"});
            for (size_t i = 0; i < rep.delta_grid.size(); ++i)
                csv += csv_row({fmt_double(rep.delta_grid[i]), fmt_double(rep.raw_ratio[i]),
                                fmt_double(rep.normalized_ratio[i])});
            write_text_file(out_dir + "/interpolation.csv", csv);
            ordered_json j;
            j["s"] = rep.s;
            j["sup_normalized"] = rep.sup_normalized;
            write_text_file(out_dir + "/interpolation.json", j.dump(2) + "\n");
        } else if (*c_cle) {
            const DoubleWell w = builtin_well(well_name);
            auto parse_ints = [](const std::string& text) {
                std::vector<int> v;
                std::istringstream ss(text);
                std::string tok;
                while (std::getline(ss, tok, ',')) v.push_back(std::stoi(tok));
                return v;
            };
            std::vector<double> deltas;
            {
                std::istringstream ss(cle_deltas);
                std::string tok;
                while (std::getline(ss, tok, ',')) deltas.push_back(std::stod(tok));
            }
            const std::vector<int> ls = parse_ints(l_list);
            const std::vector<int> ms = parse_ints(m_list);
            struct DeltaData {
                double delta;
                SpectralField u_hat;
                double mm;
            };
            std::vector<DeltaData> cache;
            for (double dl : deltas) {
                const int n1 = next_pow2(std::max(256, static_cast<int>(std::ceil(64.0 / dl))));
                const SampledField u = sample_admissible(udelta_profile(dl), Grid1D(n1));
                SpectralField u_hat = forward_transform(u);
                const double mm = modica_mortola(u, u_hat, dl, w);
                cache.push_back({dl, std::move(u_hat), mm});
            }
            std::string csv = csv_row({"d", "l", "m", "delta", "lhs", "term_l2", "term_grad",
                                       "mm", "fitted_c"});
            for (int d : {1, 2}) {
                for (int l : ls) {
                    const TorusTriangulation tri = build_triangulation(d, l);
                    for (const DeltaData& dd : cache) {
                        const Profile prof = udelta_profile(dd.delta);
                        const TorusField tf = lift_profile(prof.value, d);
                        const PAField pa = clement_approximate(tf, tri);
                        const double term_l2 = pa_l2_error_sq(tf, pa);
                        const double term_grad = pa_grad_l2_sq(pa);
                        for (int m : ms) {
                            const double L = std::max(1.0, std::floor(static_cast<double>(m)));
                            const double factor = 1.0 / L + L / (static_cast<double>(m) * m);
                            const double lhs = min_kernel_sum(dd.u_hat, m);
                            csv += csv_row({std::to_string(d), std::to_string(l),
                                            std::to_string(m), fmt_double(dd.delta),
                                            fmt_double(lhs), fmt_double(term_l2),
                                            fmt_double(term_grad), fmt_double(dd.mm),
                                            fmt_double(lhs / (factor * dd.mm))});
                        }
                    }
                }
            }
            std::filesystem::create_directories(out_dir);
            write_text_file(out_dir + "/clement.csv", csv);
        } else if (*c_swp) {
            SweepConfig cfg = load_sweep_config(config_path);
            if (workers > 1) cfg.workers = workers;
            if (c_swp->count("--seed") > 0) cfg.seed = seed;
            const SweepOutcome outcome = run_sweep(cfg);
            emit_report(outcome, cfg, out_dir);
            std::cout << "points = " << outcome.points.size()
                      << ", invariant_violations = " << outcome.invariant_violations << "\n";
            if (outcome.invariant_violations > 0) return 3;
        } else if (*c_cls) {
            const DoubleWell w = builtin_well(well_name);
            const Params p{b, sigma, kappa, lambda};
            const RegimeLabel r = classify(p, w, c_small, c_big);
            ordered_json j;
            j["label"] = r.label;
            j["threshold"] = r.threshold;
            j["lambda_sq"] = lambda * lambda;
            std::cout << j.dump(2) << "\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
