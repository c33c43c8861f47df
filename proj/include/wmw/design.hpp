#pragma once

#include "wmw/distributions.hpp"
#include "wmw/moments.hpp"
#include "wmw/power.hpp"

#include <vector>

namespace wmw {

struct CurvePoint {
    double omega;
    long m;
    long n;
    double power;
};

struct DesignReport {
    Design optimal{1, 1};
    double optimalPower = 0.0;
    std::vector<CurvePoint> powerCurve;
    double deficiencyAtHalf = 0.0;
    double epsilon = 0.1;
    ExceedanceSummary integrals;
};

/// Integer group sizes m with epsilon <= m / N <= 1 - epsilon (and m, n >= 1).
std::vector<long> design_grid(long total, double epsilon);

/// Exhaustive scan of `design_grid`, maximizing the normal-approximation
/// power. Ties (within 1e-12) go to the design closest to omega = 0.5, then
/// to the smaller m. Throws ParameterError if the grid is empty.
DesignReport optimal_design(const DistributionSpec& F, const DistributionSpec& G, long total,
                            double alpha, Side side, double epsilon = 0.1);

/// Power at the realizable design nearest each grid value, in grid order.
std::vector<CurvePoint> power_curve(const DistributionSpec& F, const DistributionSpec& G, long total,
                                    double alpha, Side side, const std::vector<double>& grid);

/// Argmax over a curve using the tie-break rule of `optimal_design`.
const CurvePoint& best_point(const std::vector<CurvePoint>& curve, long total);

} // namespace wmw
