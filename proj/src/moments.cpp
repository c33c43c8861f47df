#include "wmw/moments.hpp"

#include "wmw/errors.hpp"

#include <algorithm>
#include <cmath>

namespace wmw {

Design::Design(long m, long n) : m_(m), n_(n) {
    if (m < 1 || n < 1) throw ParameterError("design: both group sizes must be >= 1");
}

Design Design::from_omega(long total, double omega) {
    if (total < 2) throw ParameterError("design: total sample size must be >= 2");
    if (!(omega > 0.0 && omega < 1.0)) throw ParameterError("design: omega must lie in (0, 1)");
    const long m = std::clamp(std::lround(omega * static_cast<double>(total)), 1L, total - 1);
    return Design(m, total - m);
}

NullMoments null_moments(const Design& d) {
    const auto m = static_cast<long long>(d.m());
    const auto n = static_cast<long long>(d.n());
    const long long mn = m * n;
    return {static_cast<double>(mn) / 2.0, static_cast<double>(mn * (m + n + 1)) / 12.0};
}

MomentSummary alt_moments(const Design& d, const ExceedanceSummary& s) {
    const double m = static_cast<double>(d.m());
    const double n = static_cast<double>(d.n());
    const double mn = m * n;
    const double p = s.pXgeY;

    MomentSummary out;
    const NullMoments null = null_moments(d);
    out.e0 = null.e0;
    out.var0 = null.var0;
    out.e1 = mn * p;
    out.var1 = mn * (p - (m + n - 1.0) * p * p + (n - 1.0) * s.intG2f + (m - 1.0) * s.int1mF2g);
    if (out.var1 < 0.0) {
        out.var1 = 0.0;
        out.varianceClamped = true;
    }
    out.muN = (out.e1 - out.e0) / std::sqrt(out.var0);
    out.sigma2N = out.var1 / out.var0;
    return out;
}

MomentSummary alt_moments(const Design& d, const DistributionSpec& F, const DistributionSpec& G) {
    return alt_moments(d, pair_integrals(F, G));
}

double standardized_mean_symmetric(double omega, long total, double p) {
    if (!(omega > 0.0 && omega < 1.0)) throw ParameterError("omega must lie in (0, 1)");
    const double N = static_cast<double>(total);
    return std::sqrt(omega * (1.0 - omega)) * N * (p - 0.5) / std::sqrt((N + 1.0) / 12.0);
}

} // namespace wmw
