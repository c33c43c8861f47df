#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace wmw {

struct QuadratureOptions {
    double abs_tolerance = 1e-10;
    double rel_tolerance = 0.0;
    std::size_t max_subintervals = std::size_t{1} << 15;
};

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    std::size_t subintervals = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15 point) integration of `f` over
/// [lo, hi]. `breakpoints` seeds the initial partition; points outside
/// (lo, hi) are ignored. Never throws on non-convergence: the achieved
/// bound is returned with `converged == false`. Reversed limits negate.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           std::span<const double> breakpoints = {},
                           const QuadratureOptions& options = {});

} // namespace wmw
