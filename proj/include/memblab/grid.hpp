// grid.hpp
// Uniform periodic 1D grid on [0,1), sampled fields, quadrature, and the
// admissibility projection (box [-1,1] + zero mean).
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace memblab {

struct Grid1D {
    int n_samples = 0;

    Grid1D() = default;
    explicit Grid1D(int n);

    double spacing() const { return 1.0 / n_samples; }
    double point(int j) const { return static_cast<double>(j) / n_samples; }
    bool operator==(const Grid1D& o) const { return n_samples == o.n_samples; }
};

struct SampledField {
    Grid1D grid;
    std::vector<double> values;

    SampledField() = default;
    explicit SampledField(Grid1D g, double fill = 0.0);
    SampledField(Grid1D g, std::vector<double> v);

    int size() const { return grid.n_samples; }
    double operator[](int j) const { return values[j]; }
    double& operator[](int j) { return values[j]; }
};

// Physical parameters of the coupled energy: line tension weight b, surface
// tension sigma, bending rigidity kappa, coupling strength lambda.
struct Params {
    double b = 1.0;
    double sigma = 1.0;
    double kappa = 1.0;
    double lambda = 0.0;

    // Throws if any field is non-finite or negative. Degenerate values
    // (kappa = 0, b = 0) are legal here; the minimizer rejects them itself.
    void validate() const;
};

SampledField sample_function(Grid1D g, const std::function<double(double)>& fn);

// Periodic rectangle rule (1/N) sum f(x_j); exact for trig polynomials of
// degree < N.
double integrate(const SampledField& f);
double mean(const SampledField& f);
double l2_norm_sq(const SampledField& f);   // integrate(f*f)
double inner(const SampledField& f, const SampledField& g);
double max_abs(const SampledField& f);
bool all_finite(const SampledField& f);

SampledField operator+(const SampledField& a, const SampledField& b);
SampledField operator-(const SampledField& a, const SampledField& b);
SampledField operator*(double c, const SampledField& a);

struct ProjectionResult {
    SampledField field;
    bool converged = true;
    int iterations = 0;
};

// Alternating projections (clamp to [-1,1], subtract mean) until both
// constraints hold within tol; flags non-convergence after max_rounds.
ProjectionResult project_admissible(const SampledField& u, double tol = 1e-10,
                                    int max_rounds = 200);

// Box within box_tol and |mean| <= mean_tol.
bool is_admissible(const SampledField& u, double box_tol = 1e-8,
                   double mean_tol = 1e-8);

// Test-only style oracle: Dykstra's algorithm for the same intersection.
SampledField dykstra_project(const SampledField& u, int iterations);

int next_pow2(int n);
double wrap_unit(double x);  // x mod 1 in [0,1)

}  // namespace memblab
