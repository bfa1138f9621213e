#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qrsim::quad {

struct Result {
    double value{0.0};
    double error{0.0};
};

// Globally adaptive Gauss-Kronrod (G15/K31) over [a, b], split at every breakpoint
// strictly inside the interval. Throws AccuracyError when the requested
// tolerance is not met.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints = {},
                 double rel_tol = 1e-11, double abs_tol = 1e-300,
                 unsigned max_depth = 30);

// Composite Gauss-Legendre rule on `panels` equal panels of [a, b]
// (20 nodes per panel).
template <class F>
auto composite_gauss_legendre(const F& f, double a, double b, int panels)
    -> decltype(f(a));

// Sorted, de-duplicated breakpoints strictly inside (a, b).
std::vector<double> interior_points(std::span<const double> pts, double a, double b);

} // namespace qrsim::quad

#include "qrsim/quadrature_impl.hpp"
