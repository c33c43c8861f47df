#pragma once

#include "wmw/distributions.hpp"
#include "wmw/quadrature.hpp"

#include <vector>

namespace wmw {

/// The three integrals that determine the mean and variance of U under an
/// arbitrary pair of continuous distributions (X ~ F, Y ~ G).
struct ExceedanceSummary {
    double pXgeY = 0.0;     // P(X >= Y) = int G f
    double intG2f = 0.0;    // int G(x)^2 f(x) dx = P(X >= Y1, X >= Y2)
    double int1mF2g = 0.0;  // int (1 - F(x))^2 g(x) dx = P(X1 >= Y, X2 >= Y)
    double quadratureErrorBound = 0.0;
    bool converged = true;
};

struct ExceedanceOptions {
    QuadratureOptions quadrature{};
    /// Accuracy contract; a larger achieved bound raises NumericalError.
    double max_error = 1e-9;
};

/// Truncated integration domain [lo, hi] and the seed partition shared by
/// all integrals over the pair (F, G).
struct IntegrationDomain {
    double lo;
    double hi;
    std::vector<double> breakpoints;
};

IntegrationDomain integration_domain(const DistributionSpec& F, const DistributionSpec& G);

double prob_x_ge_y(const DistributionSpec& F, const DistributionSpec& G,
                   const ExceedanceOptions& options = {});

ExceedanceSummary second_moment_integrals(const DistributionSpec& F, const DistributionSpec& G,
                                          const ExceedanceOptions& options = {});

/// Integrals used by the moment and power code: the exact null values
/// (1/2, 1/3, 1/3) when F and G are the same spec, quadrature otherwise.
ExceedanceSummary pair_integrals(const DistributionSpec& F, const DistributionSpec& G,
                                 const ExceedanceOptions& options = {});

/// Residuals of the integral identities relating F and G.
struct IdentityReport {
    /// int g (1-F)^2  vs  1 - 2 int g F + int g F^2
    double varianceRelationResidual = 0.0;
    /// int (1-F)^2 g  vs  int ( int_{-inf}^x G f dy + G(x)(1 - F(x)) ) f(x) dx,
    /// the right-hand side evaluated by nested quadrature.
    double nestedIdentityResidual = 0.0;
    /// P(X >= Y) + P(Y >= X) - 1
    double complementResidual = 0.0;
    double lhs = 0.0;
    double nestedRhs = 0.0;
};

IdentityReport check_identities(const DistributionSpec& F, const DistributionSpec& G,
                                const QuadratureOptions& options = {});

} // namespace wmw
