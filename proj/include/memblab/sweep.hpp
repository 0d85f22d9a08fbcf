// sweep.hpp
// Configuration-driven parameter sweeps: regime classification against the
// four-term threshold, per-point minimization + construction energies,
// log-log slope fitting, and CSV/JSON/SVG report emission.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memblab/grid.hpp"
#include "memblab/minimize.hpp"
#include "memblab/potential.hpp"

namespace memblab {

struct RegimeLabel {
    std::string label;       // supercritical | subcritical | gap
    double threshold = 0.0;  // max{b sigma, b kappa, sqrt(b sigma kappa), sqrt(b) kappa}
};

double regime_threshold(const Params& p);
double default_c_big(const DoubleWell& w);    // max{2048, 256 sqrt(2 max W)}
double default_c_small(const DoubleWell& w);  // min{1/2, 1/(c_int sqrt 8), c_mm/sqrt 2}

RegimeLabel classify(const Params& p, const DoubleWell& w, double c_small, double c_big);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    std::string well = "quartic";
    int grid_n = 1024;
    uint64_t seed = 1;
    std::string axis = "lambda";  // which parameter varies
    std::vector<double> axis_values;
    Params base;  // fixed values; the axis overwrites one field per point
    int max_iters = 600;
    double tol_grad = 1e-7;
    int workers = 1;
    double c_small = -1.0;  // < 0 = default from the fitted constant
    double c_big = -1.0;    // < 0 = default from the well
};

// Flat key = value format, '#' comments; throws ConfigError with line/field
// diagnostics.
SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

struct SweepPointResult {
    Params params;
    RegimeLabel regime;
    double min_energy = 0.0;
    double construction_energy = 0.0;
    double lower_bound_young = 0.0;  // -lambda^2/(2 kappa)
    double lower_bound_mm = 0.0;     // c_mm * min{1, sqrt(b/2)}
    int grid_n = 0;
    int converged_starts = 0;
};

struct SweepOutcome {
    std::vector<SweepPointResult> points;
    int invariant_violations = 0;
};

SweepOutcome run_sweep(const SweepConfig& config);

struct FitResult {
    double slope = 0.0;
    double r2 = 0.0;
};

// Least squares on (ln x, ln |y|). With signed = true, all ys must share one
// sign (throws otherwise).
FitResult fit_slope(const std::vector<double>& xs, const std::vector<double>& ys, bool signed_logs);

// Writes results.csv, summary.json and regime_diagram.svg into out_dir.
void emit_report(const SweepOutcome& outcome, const SweepConfig& config,
                 const std::string& out_dir);

}  // namespace memblab
