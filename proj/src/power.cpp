#include "wmw/power.hpp"

#include "wmw/design.hpp"
#include "wmw/errors.hpp"
#include "wmw/special.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

namespace wmw {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
}

double step(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); }

} // namespace

std::string to_string(Side side) {
    switch (side) {
    case Side::OneSidedUpper: return "upper";
    case Side::OneSidedLower: return "lower";
    case Side::TwoSided: return "two-sided";
    }
    return "?";
}

Side parse_side(const std::string& text) {
    if (text == "upper" || text == "one_sided_upper" || text == "one-sided") {
        return Side::OneSidedUpper;
    }
    if (text == "lower" || text == "one_sided_lower") return Side::OneSidedLower;
    if (text == "two-sided" || text == "two_sided" || text == "two") return Side::TwoSided;
    throw ParameterError("unknown side '" + text + "' (expected upper, lower or two-sided)");
}

std::string to_string(PowerMethod method) {
    switch (method) {
    case PowerMethod::WmwNormalApprox: return "wmw_normal_approx";
    case PowerMethod::WelchApprox: return "welch_approx";
    case PowerMethod::MonteCarlo: return "monte_carlo";
    }
    return "?";
}

double normal_approx_power(double muN, double sigma2N, double alpha, Side side) {
    check_alpha(alpha);
    const double sigma = std::sqrt(std::max(sigma2N, 0.0));
    if (sigma == 0.0) {
        switch (side) {
        case Side::OneSidedUpper: return step(muN - special::normal_quantile(1.0 - alpha));
        case Side::OneSidedLower: return step(special::normal_quantile(alpha) - muN);
        case Side::TwoSided:
            return step(special::normal_quantile(alpha / 2.0) - muN) +
                   step(muN - special::normal_quantile(1.0 - alpha / 2.0));
        }
    }
    switch (side) {
    case Side::OneSidedUpper:
        return special::normal_sf((special::normal_quantile(1.0 - alpha) - muN) / sigma);
    case Side::OneSidedLower:
        return special::normal_cdf((special::normal_quantile(alpha) - muN) / sigma);
    case Side::TwoSided:
        return special::normal_cdf((special::normal_quantile(alpha / 2.0) - muN) / sigma) +
               special::normal_sf((special::normal_quantile(1.0 - alpha / 2.0) - muN) / sigma);
    }
    return 0.0;
}

PowerResult wmw_power(const ExceedanceSummary& integrals, const Design& design, double alpha,
                      Side side) {
    check_alpha(alpha);
    const MomentSummary moments = alt_moments(design, integrals);
    PowerResult result;
    result.method = PowerMethod::WmwNormalApprox;
    result.muN = moments.muN;
    result.sigma2N = moments.sigma2N;
    result.varianceClamped = moments.varianceClamped;
    result.degenerateVariance = moments.sigma2N <= 0.0;
    result.lowConfidence = std::min(design.m(), design.n()) < kMinGroupForNormalApprox;
    result.approxPower =
        std::clamp(normal_approx_power(moments.muN, moments.sigma2N, alpha, side), 0.0, 1.0);
    return result;
}

PowerResult wmw_power(const PowerQuery& query) {
    return wmw_power(pair_integrals(query.F, query.G), query.design, query.alpha, query.side);
}

double deficiency_symmetric(double omega) {
    if (!(omega > 0.0 && omega < 1.0)) throw ParameterError("omega must lie in (0, 1)");
    return 1.0 / (4.0 * omega * (1.0 - omega)) - 1.0;
}

DeficiencyResult deficiency_search(const DesignPowerFn& power, long total, double omega,
                                   const DeficiencyOptions& options) {
    if (!(omega > 0.0 && omega < 1.0)) throw ParameterError("omega must lie in (0, 1)");
    const auto grid = design_grid(total, options.epsilon);

    std::vector<CurvePoint> curve;
    curve.reserve(grid.size());
    for (long m : grid) {
        const Design d(m, total - m);
        curve.push_back({d.omega(), m, total - m, power(d)});
    }
    const CurvePoint& best = best_point(curve, total);

    DeficiencyResult result;
    result.optimal = Design(best.m, best.n);
    result.optimalPower = best.power;
    const double target = best.power - 1e-12;
    const long cap = options.cap_factor * total;
    for (long candidate = total; candidate <= cap; ++candidate) {
        const Design d = Design::from_omega(candidate, omega);
        if (power(d) >= target) {
            result.matchedTotal = candidate;
            result.deficiency = static_cast<double>(candidate - total) / static_cast<double>(total);
            return result;
        }
    }
    result.capReached = true;
    result.matchedTotal = cap;
    result.deficiency = static_cast<double>(cap - total) / static_cast<double>(total);
    return result;
}

DeficiencyResult deficiency_general(const DistributionSpec& F, const DistributionSpec& G,
                                    long total, double omega, double alpha, Side side,
                                    const DeficiencyOptions& options) {
    check_alpha(alpha);
    const ExceedanceSummary integrals = pair_integrals(F, G);
    return deficiency_search(
        [&](const Design& d) { return wmw_power(integrals, d, alpha, side).approxPower; }, total,
        omega, options);
}

PowerResult welch_power(double mu1, double sd1, double mu2, double sd2, const Design& design,
                        double alpha, Side side) {
    check_alpha(alpha);
    if (!(sd1 > 0.0 && sd2 > 0.0)) throw ParameterError("welch_power: sds must be > 0");
    if (design.m() < 2 || design.n() < 2) {
        throw ParameterError("welch_power: both groups need at least 2 observations");
    }
    const double m = static_cast<double>(design.m());
    const double n = static_cast<double>(design.n());
    const double v1 = sd1 * sd1 / m;
    const double v2 = sd2 * sd2 / n;
    const double df = (v1 + v2) * (v1 + v2) / (v1 * v1 / (m - 1.0) + v2 * v2 / (n - 1.0));
    const double delta = (mu1 - mu2) / std::sqrt(v1 + v2);

    PowerResult result;
    result.method = PowerMethod::WelchApprox;
    result.muN = delta;
    result.sigma2N = 1.0;

    double power = 0.0;
    if (df > 200.0) {
        power = normal_approx_power(delta, 1.0, alpha, side);
    } else {
        switch (side) {
        case Side::OneSidedUpper: {
            const double crit = special::student_t_quantile(1.0 - alpha, df);
            power = 1.0 - special::noncentral_t_cdf(crit, df, delta);
            break;
        }
        case Side::OneSidedLower: {
            const double crit = special::student_t_quantile(1.0 - alpha, df);
            power = special::noncentral_t_cdf(-crit, df, delta);
            break;
        }
        case Side::TwoSided: {
            const double crit = special::student_t_quantile(1.0 - alpha / 2.0, df);
            power = 1.0 - special::noncentral_t_cdf(crit, df, delta) +
                    special::noncentral_t_cdf(-crit, df, delta);
            break;
        }
        }
    }
    result.approxPower = std::clamp(power, 0.0, 1.0);
    return result;
}

double welch_optimal_omega(double sd1, double sd2) {
    if (!(sd1 > 0.0 && sd2 > 0.0)) throw ParameterError("welch_optimal_omega: sds must be > 0");
    return 1.0 / (1.0 + sd2 / sd1);
}

DeficiencyResult welch_deficiency(const DistributionSpec& F, const DistributionSpec& G, long total,
                                  double omega, double alpha, Side side,
                                  const DeficiencyOptions& options) {
    if (!std::holds_alternative<Normal>(F.family) || !std::holds_alternative<Normal>(G.family)) {
        throw ParameterError("welch_deficiency: both distributions must be normal");
    }
    const double mu1 = F.mean();
    const double mu2 = G.mean();
    const double sd1 = F.sd();
    const double sd2 = G.sd();
    DeficiencyOptions opts = options;
    // Welch needs two observations per group.
    opts.epsilon = std::max(options.epsilon, 2.0 / static_cast<double>(total));
    return deficiency_search(
        [&](const Design& d) {
            if (d.m() < 2 || d.n() < 2) return 0.0;
            return welch_power(mu1, sd1, mu2, sd2, d, alpha, side).approxPower;
        },
        total, omega, opts);
}

} // namespace wmw
