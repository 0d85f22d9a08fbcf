// quadrature.hpp
// Adaptive Simpson quadrature for well antiderivatives and kernel constants.
#pragma once

#include <functional>

namespace memblab {

// Absolute-tolerance adaptive Simpson on [a,b]; handles endpoint-singular
// derivatives (sqrt / sqrt-log type integrands) by dyadic refinement.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 52);

}  // namespace memblab
