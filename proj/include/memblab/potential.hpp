// potential.hpp
// Double-well potentials W on [-1,1] with zeros exactly at the pure phases,
// the antiderivative phi of sqrt(W), and the derived constants used by the
// energy bounds (max W, the quadratic growth constant c_w, and c_mm).
#pragma once

#include <functional>
#include <string>

namespace memblab {

struct DoubleWell {
    std::string name;
    std::function<double(double)> w;      // W, defined on [-1,1]
    std::function<double(double)> dw;     // W'
    double max_w = 0.0;                   // max over [-1,1] (the K of the bounds)
    double c_w = 0.0;                     // largest c with c*min{|x+-1|^2} <= W on the check grid
    double c_mm = 0.0;                    // max{min W on [-1/2,1/2], sqrt(min W)}

    // Out-of-range queries clamp; the admissible set keeps |u| <= 1 and the
    // clamp only shields 1-ulp projection overshoot.
    double evaluate(double x) const;
    double derivative(double x) const;

    // phi(z) = integral of sqrt(W) from -1 to z, adaptive quadrature to 1e-10.
    double phi(double z) const;
};

// name in {quartic, quadratic, logarithmic}; throws on unknown names.
// Checks (H1) and (H2) on a 1e4-point grid at construction.
DoubleWell builtin_well(const std::string& name);

// Smallest valid c'_W on a check grid: max over grid pairs of
// |z1-z2|^2 / |phi(z1)-phi(z2)| (pairs with phi-difference < 1e-12 skipped).
// Throws if any retained ratio exceeds 10*(2/sqrt(c_w)).
double verify_h3(const DoubleWell& w, int grid_n = 2000);

}  // namespace memblab
