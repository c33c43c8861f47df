#pragma once

#include "wmw/distributions.hpp"
#include "wmw/exceedance.hpp"

namespace wmw {

/// Allocation of a total sample size N = m + n; omega = m / N is derived.
/// Only realizable (integer) designs can be represented.
class Design {
public:
    Design(long m, long n);

    /// Nearest realizable design to omega at total N (m = round(omega N),
    /// clamped so both groups are nonempty).
    static Design from_omega(long total, double omega);

    long m() const { return m_; }
    long n() const { return n_; }
    long total() const { return m_ + n_; }
    double omega() const { return static_cast<double>(m_) / static_cast<double>(total()); }

    Design swapped() const { return Design(n_, m_); }

    bool operator==(const Design&) const = default;

private:
    long m_;
    long n_;
};

struct NullMoments {
    double e0;
    double var0;
};

struct MomentSummary {
    double e0 = 0.0;
    double var0 = 0.0;
    double e1 = 0.0;
    double var1 = 0.0;
    double muN = 0.0;
    double sigma2N = 0.0;
    /// var1 came out negative from quadrature noise and was clamped to 0.
    bool varianceClamped = false;
};

/// E0(U) = mn/2 and Var0(U) = mn(m+n+1)/12.
NullMoments null_moments(const Design& d);

MomentSummary alt_moments(const Design& d, const ExceedanceSummary& integrals);
MomentSummary alt_moments(const Design& d, const DistributionSpec& F, const DistributionSpec& G);

/// Closed-form standardized mean for symmetric shift alternatives,
/// sqrt(omega (1 - omega)) N (p - 1/2) / sqrt((N + 1) / 12).
double standardized_mean_symmetric(double omega, long total, double p);

} // namespace wmw
