#include "wmw/exceedance.hpp"

#include "wmw/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace wmw {

namespace {

constexpr double kTailMass = 1e-12;

constexpr std::array<double, 17> kSeedProbabilities = {
    1e-9, 1e-6, 1e-4, 1e-3, 0.01, 0.05, 0.1, 0.25, 0.5,
    0.75, 0.9,  0.95, 0.99, 0.999, 1 - 1e-4, 1 - 1e-6, 1 - 1e-9};

QuadratureResult run(const std::function<double(double)>& integrand, const IntegrationDomain& domain,
                     const QuadratureOptions& options) {
    return integrate(integrand, domain.lo, domain.hi, domain.breakpoints, options);
}

void enforce(const QuadratureResult& r, double max_error, const char* what) {
    if (!(r.error_bound <= max_error)) {
        std::ostringstream msg;
        msg << what << ": quadrature error bound " << r.error_bound << " exceeds " << max_error;
        throw NumericalError(msg.str(), r.error_bound);
    }
}

} // namespace

IntegrationDomain integration_domain(const DistributionSpec& F, const DistributionSpec& G) {
    F.validate();
    G.validate();
    IntegrationDomain domain{};
    domain.lo = std::min(quantile(F, kTailMass), quantile(G, kTailMass));
    domain.hi = std::max(quantile(F, 1.0 - kTailMass), quantile(G, 1.0 - kTailMass));
    for (const auto* spec : {&F, &G}) {
        for (double p : kSeedProbabilities) domain.breakpoints.push_back(quantile(*spec, p));
        // Density kinks at the edge of a half-line support.
        domain.breakpoints.push_back(spec->support_lower());
    }
    std::sort(domain.breakpoints.begin(), domain.breakpoints.end());
    return domain;
}

double prob_x_ge_y(const DistributionSpec& F, const DistributionSpec& G,
                   const ExceedanceOptions& options) {
    const IntegrationDomain domain = integration_domain(F, G);
    const auto r = run([&](double x) { return cdf(G, x) * pdf(F, x); }, domain, options.quadrature);
    enforce(r, options.max_error, "prob_x_ge_y");
    return std::clamp(r.value, 0.0, 1.0);
}

ExceedanceSummary second_moment_integrals(const DistributionSpec& F, const DistributionSpec& G,
                                          const ExceedanceOptions& options) {
    const IntegrationDomain domain = integration_domain(F, G);
    const auto p = run([&](double x) { return cdf(G, x) * pdf(F, x); }, domain, options.quadrature);
    const auto a = run(
        [&](double x) {
            const double g = cdf(G, x);
            return g * g * pdf(F, x);
        },
        domain, options.quadrature);
    // 1 - F~(x) with F~(x) = P(X < x); this is the survival function for
    // every continuous family.
    const auto b = run(
        [&](double x) {
            const double s = sf(F, x);
            return s * s * pdf(G, x);
        },
        domain, options.quadrature);

    ExceedanceSummary summary;
    summary.pXgeY = std::clamp(p.value, 0.0, 1.0);
    summary.intG2f = std::clamp(a.value, 0.0, 1.0);
    summary.int1mF2g = std::clamp(b.value, 0.0, 1.0);
    summary.quadratureErrorBound = std::max({p.error_bound, a.error_bound, b.error_bound});
    summary.converged = p.converged && a.converged && b.converged;
    enforce(p, options.max_error, "second_moment_integrals");
    enforce(a, options.max_error, "second_moment_integrals");
    enforce(b, options.max_error, "second_moment_integrals");
    return summary;
}

ExceedanceSummary pair_integrals(const DistributionSpec& F, const DistributionSpec& G,
                                 const ExceedanceOptions& options) {
    if (F == G) {
        F.validate();
        return ExceedanceSummary{0.5, 1.0 / 3.0, 1.0 / 3.0, 0.0, true};
    }
    return second_moment_integrals(F, G, options);
}

IdentityReport check_identities(const DistributionSpec& F, const DistributionSpec& G,
                                const QuadratureOptions& options) {
    const IntegrationDomain domain = integration_domain(F, G);

    const double lhs = run(
        [&](double x) {
            const double s = sf(F, x);
            return s * s * pdf(G, x);
        },
        domain, options).value;
    const double g_times_F = run([&](double x) { return cdf(F, x) * pdf(G, x); }, domain, options).value;
    const double g_times_F2 = run(
        [&](double x) {
            const double c = cdf(F, x);
            return c * c * pdf(G, x);
        },
        domain, options).value;
    const double f_times_G = run([&](double x) { return cdf(G, x) * pdf(F, x); }, domain, options).value;

    QuadratureOptions inner_options = options;
    inner_options.abs_tolerance = options.abs_tolerance * 1e-2;
    auto inner = [&](double x) {
        std::vector<double> cuts;
        for (double b : domain.breakpoints) {
            if (b < x) cuts.push_back(b);
        }
        return integrate([&](double y) { return cdf(G, y) * pdf(F, y); }, domain.lo, x, cuts,
                         inner_options)
            .value;
    };
    const double nested = run(
        [&](double x) {
            const double f = pdf(F, x);
            if (f == 0.0) return 0.0;
            return (inner(x) + cdf(G, x) * sf(F, x)) * f;
        },
        domain, options).value;

    IdentityReport report;
    report.lhs = lhs;
    report.nestedRhs = nested;
    report.varianceRelationResidual = std::fabs(lhs - (1.0 - 2.0 * g_times_F + g_times_F2));
    report.nestedIdentityResidual = std::fabs(lhs - nested);
    report.complementResidual = std::fabs(f_times_G + g_times_F - 1.0);
    return report;
}

} // namespace wmw
