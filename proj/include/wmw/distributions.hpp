#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wmw {

class RandomStream;

struct Normal {
    double mean = 0.0;
    double sd = 1.0;

    bool operator==(const Normal&) const = default;
};

struct Exponential {
    double rate = 1.0;

    bool operator==(const Exponential&) const = default;
};

struct LogNormal {
    double logMean = 0.0;
    double logSd = 1.0;

    bool operator==(const LogNormal&) const = default;
};

struct ChiSquare {
    double df = 1.0;

    bool operator==(const ChiSquare&) const = default;
};

// Location-scale Student t: density (1/scale) t_df((x - location) / scale).
struct StudentT {
    double df = 1.0;
    double location = 0.0;
    double scale = 1.0;

    bool operator==(const StudentT&) const = default;
};

using Family = std::variant<Normal, Exponential, LogNormal, ChiSquare, StudentT>;

/// A continuous distribution: a parametric family plus an additive shift.
/// A spec with shift `a` describes the variate X_base + a, so the
/// alternative G(x) = F(x + a) is obtained by shifting F's spec by -a.
struct DistributionSpec {
    Family family = Normal{};
    double shift = 0.0;

    /// Throws ParameterError if any parameter is outside its domain.
    void validate() const;

    std::string family_name() const;
    std::string describe() const;

    DistributionSpec shifted(double delta) const { return {family, shift + delta}; }

    bool operator==(const DistributionSpec&) const = default;

    double mean() const;
    double sd() const;
    /// Infimum of the support (-inf for families on the real line).
    double support_lower() const;
};

DistributionSpec make_normal(double mean, double sd, double shift = 0.0);
DistributionSpec make_exponential(double rate, double shift = 0.0);
DistributionSpec make_lognormal(double log_mean, double log_sd, double shift = 0.0);
DistributionSpec make_chisquare(double df, double shift = 0.0);
DistributionSpec make_student_t(double df, double location, double scale, double shift = 0.0);

double pdf(const DistributionSpec& spec, double x);
double cdf(const DistributionSpec& spec, double x);
/// 1 - cdf, computed without cancellation in the upper tail.
double sf(const DistributionSpec& spec, double x);
/// P(X < x). Equal to cdf for every supported (continuous) family; kept
/// separate so a discrete family has a place to differ.
double strict_lower_cdf(const DistributionSpec& spec, double x);

/// Inverse CDF. Closed form where available, bracketed root-finding on the
/// CDF (lower half) or survival function (upper half) otherwise.
/// Throws ParameterError unless 0 < p < 1.
double quantile(const DistributionSpec& spec, double p);

/// Draws `k` independent variates.
std::vector<double> sample(const DistributionSpec& spec, RandomStream& rng, std::size_t k);
/// Appends into `out` (cleared first); avoids reallocation in simulation loops.
void sample_into(const DistributionSpec& spec, RandomStream& rng, std::size_t k,
                 std::vector<double>& out);

} // namespace wmw
