#pragma once

#include "wmw/distributions.hpp"
#include "wmw/exceedance.hpp"
#include "wmw/moments.hpp"

#include <functional>
#include <string>

namespace wmw {

/// Direction of the alternative. Upper: P(X >= Y) > 1/2. Lower: P(X >= Y) < 1/2.
enum class Side { OneSidedUpper, OneSidedLower, TwoSided };

std::string to_string(Side side);
/// Accepts "upper", "lower", "two-sided" (and "one_sided_upper" etc.).
Side parse_side(const std::string& text);

enum class PowerMethod { WmwNormalApprox, WelchApprox, MonteCarlo };

std::string to_string(PowerMethod method);

struct PowerQuery {
    DistributionSpec F;
    DistributionSpec G;
    Design design{1, 1};
    double alpha = 0.05;
    Side side = Side::OneSidedUpper;
};

struct PowerResult {
    double approxPower = 0.0;
    double muN = 0.0;
    double sigma2N = 0.0;
    PowerMethod method = PowerMethod::WmwNormalApprox;
    /// sigma2N was zero; power is the limit of the formula.
    bool degenerateVariance = false;
    /// min(m, n) is below the finite-sample floor for the normal approximation.
    bool lowConfidence = false;
    bool varianceClamped = false;
};

/// Group size below which the normal approximation is flagged.
inline constexpr long kMinGroupForNormalApprox = 7;

/// Normal-approximation power from standardized moments.
double normal_approx_power(double muN, double sigma2N, double alpha, Side side);

PowerResult wmw_power(const PowerQuery& query);
/// Same, reusing precomputed exceedance integrals for (F, G).
PowerResult wmw_power(const ExceedanceSummary& integrals, const Design& design, double alpha,
                      Side side);

/// D(omega) = 1 / (4 omega (1 - omega)) - 1.
double deficiency_symmetric(double omega);

/// Power of some test as a function of the realizable design.
using DesignPowerFn = std::function<double(const Design&)>;

struct DeficiencyResult {
    double deficiency = 0.0;
    /// Total sample size at which the design reaches the optimal power.
    long matchedTotal = 0;
    Design optimal{1, 1};
    double optimalPower = 0.0;
    /// No N' <= cap * N reached the optimal power.
    bool capReached = false;
};

struct DeficiencyOptions {
    double epsilon = 0.1;
    long cap_factor = 20;
};

/// Smallest D = N'/N - 1 >= 0 such that the design (round(omega N'), N' -
/// round(omega N')) has power at least the optimum over the epsilon-grid
/// at total N. Works for any power function.
DeficiencyResult deficiency_search(const DesignPowerFn& power, long total, double omega,
                                   const DeficiencyOptions& options = {});

DeficiencyResult deficiency_general(const DistributionSpec& F, const DistributionSpec& G,
                                    long total, double omega, double alpha, Side side,
                                    const DeficiencyOptions& options = {});

/// Noncentral-t power of the Welch test for normal groups with the given
/// population parameters; Welch-Satterthwaite degrees of freedom. Falls back
/// to the normal approximation when df > 200.
PowerResult welch_power(double mu1, double sd1, double mu2, double sd2, const Design& design,
                        double alpha, Side side);

/// 1 / (1 + sd2 / sd1).
double welch_optimal_omega(double sd1, double sd2);

/// Deficiency of omega for the Welch test; F and G must be normal.
DeficiencyResult welch_deficiency(const DistributionSpec& F, const DistributionSpec& G, long total,
                                  double omega, double alpha, Side side,
                                  const DeficiencyOptions& options = {});

} // namespace wmw
