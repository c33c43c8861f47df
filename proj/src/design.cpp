#include "wmw/design.hpp"

#include "wmw/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace wmw {

namespace {

constexpr double kTieTolerance = 1e-12;

// Guards ceil/floor against omega * N landing a rounding error away from an
// integer.
constexpr double kGridSlack = 1e-9;

} // namespace

std::vector<long> design_grid(long total, double epsilon) {
    if (total < 2) throw ParameterError("design grid: total sample size must be >= 2");
    if (!(epsilon >= 0.0 && epsilon < 0.5)) throw ParameterError("epsilon must lie in [0, 0.5)");
    const double N = static_cast<double>(total);
    const long lo = std::max(1L, static_cast<long>(std::ceil(epsilon * N - kGridSlack)));
    const long hi = std::min(total - 1, static_cast<long>(std::floor((1.0 - epsilon) * N + kGridSlack)));
    std::vector<long> grid;
    for (long m = lo; m <= hi; ++m) grid.push_back(m);
    return grid;
}

const CurvePoint& best_point(const std::vector<CurvePoint>& curve, long total) {
    if (curve.empty()) throw ParameterError("empty design grid");
    // Distance from the balanced design, in units of half an observation.
    auto imbalance = [total](const CurvePoint& p) { return std::labs(2 * p.m - total); };
    const CurvePoint* best = &curve.front();
    for (const CurvePoint& p : curve) {
        if (p.power > best->power + kTieTolerance) {
            best = &p;
        } else if (std::fabs(p.power - best->power) <= kTieTolerance) {
            const long a = imbalance(p);
            const long b = imbalance(*best);
            if (a < b || (a == b && p.m < best->m)) best = &p;
        }
    }
    return *best;
}

DesignReport optimal_design(const DistributionSpec& F, const DistributionSpec& G, long total,
                            double alpha, Side side, double epsilon) {
    const auto grid = design_grid(total, epsilon);
    if (grid.empty()) {
        throw ParameterError("optimal_design: no realizable design in [epsilon, 1 - epsilon]");
    }

    DesignReport report;
    report.epsilon = epsilon;
    report.integrals = pair_integrals(F, G);
    report.powerCurve.reserve(grid.size());
    for (long m : grid) {
        const Design d(m, total - m);
        const double power = wmw_power(report.integrals, d, alpha, side).approxPower;
        report.powerCurve.push_back({d.omega(), m, total - m, power});
    }
    const CurvePoint& best = best_point(report.powerCurve, total);
    report.optimal = Design(best.m, best.n);
    report.optimalPower = best.power;

    const ExceedanceSummary integrals = report.integrals;
    DeficiencyOptions options;
    options.epsilon = epsilon;
    report.deficiencyAtHalf =
        deficiency_search(
            [&](const Design& d) { return wmw_power(integrals, d, alpha, side).approxPower; },
            total, 0.5, options)
            .deficiency;
    return report;
}

std::vector<CurvePoint> power_curve(const DistributionSpec& F, const DistributionSpec& G, long total,
                                    double alpha, Side side, const std::vector<double>& grid) {
    const ExceedanceSummary integrals = pair_integrals(F, G);
    std::vector<CurvePoint> curve;
    curve.reserve(grid.size());
    for (double omega : grid) {
        const Design d = Design::from_omega(total, omega);
        curve.push_back({d.omega(), d.m(), d.n(), wmw_power(integrals, d, alpha, side).approxPower});
    }
    return curve;
}

} // namespace wmw
