#include "wmw/distributions.hpp"

#include "wmw/errors.hpp"
#include "wmw/random.hpp"
#include "wmw/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wmw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* message) {
    if (!ok) throw ParameterError(message);
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

// Density, CDF and survival of the unshifted family at x.
double base_pdf(const Family& family, double x) {
    return std::visit(
        overloaded{
            [x](const Normal& d) { return special::normal_pdf((x - d.mean) / d.sd) / d.sd; },
            [x](const Exponential& d) { return x < 0.0 ? 0.0 : d.rate * std::exp(-d.rate * x); },
            [x](const LogNormal& d) {
                if (x <= 0.0) return 0.0;
                const double z = (std::log(x) - d.logMean) / d.logSd;
                return special::normal_pdf(z) / (x * d.logSd);
            },
            [x](const ChiSquare& d) {
                if (x < 0.0) return 0.0;
                const double k = 0.5 * d.df;
                if (x == 0.0) return k < 1.0 ? kInf : (k == 1.0 ? 0.5 : 0.0);
                return std::exp((k - 1.0) * std::log(x) - 0.5 * x - k * std::numbers::ln2 -
                                std::lgamma(k));
            },
            [x](const StudentT& d) {
                const double z = (x - d.location) / d.scale;
                const double log_norm = std::lgamma(0.5 * (d.df + 1.0)) - std::lgamma(0.5 * d.df) -
                                        0.5 * std::log(d.df * std::numbers::pi);
                return std::exp(log_norm - 0.5 * (d.df + 1.0) * std::log1p(z * z / d.df)) /
                       d.scale;
            }},
        family);
}

double base_cdf(const Family& family, double x) {
    return std::visit(
        overloaded{
            [x](const Normal& d) { return special::normal_cdf((x - d.mean) / d.sd); },
            [x](const Exponential& d) { return x <= 0.0 ? 0.0 : -std::expm1(-d.rate * x); },
            [x](const LogNormal& d) {
                if (x <= 0.0) return 0.0;
                return special::normal_cdf((std::log(x) - d.logMean) / d.logSd);
            },
            [x](const ChiSquare& d) { return special::gamma_p(0.5 * d.df, 0.5 * x); },
            [x](const StudentT& d) {
                return special::student_t_cdf((x - d.location) / d.scale, d.df);
            }},
        family);
}

double base_sf(const Family& family, double x) {
    return std::visit(
        overloaded{
            [x](const Normal& d) { return special::normal_sf((x - d.mean) / d.sd); },
            [x](const Exponential& d) { return x <= 0.0 ? 1.0 : std::exp(-d.rate * x); },
            [x](const LogNormal& d) {
                if (x <= 0.0) return 1.0;
                return special::normal_sf((std::log(x) - d.logMean) / d.logSd);
            },
            [x](const ChiSquare& d) { return special::gamma_q(0.5 * d.df, 0.5 * x); },
            [x](const StudentT& d) {
                return special::student_t_sf((x - d.location) / d.scale, d.df);
            }},
        family);
}

// Root-finding inversion on [support, mean + 50 sd], expanded geometrically
// until the bracket holds.
double base_quantile_by_root(const DistributionSpec& base, double p) {
    const double center = base.mean();
    const double spread = base.sd();
    double lo = std::max(base.support_lower(), center - 50.0 * spread);
    double hi = center + 50.0 * spread;

    const bool lower_half = p < 0.5;
    const double target = lower_half ? p : 1.0 - p;
    auto f = [&](double x) {
        return lower_half ? base_cdf(base.family, x) - target : target - base_sf(base.family, x);
    };

    double width = hi - lo;
    while (f(hi) < 0.0) {
        width *= 2.0;
        hi = lo + width;
        if (!std::isfinite(hi)) throw NumericalError("quantile: upper bracket overflow", hi);
    }
    while (f(lo) > 0.0) {
        width *= 2.0;
        lo = hi - width;
        if (!std::isfinite(lo)) throw NumericalError("quantile: lower bracket overflow", lo);
    }
    return special::find_root(f, lo, hi);
}

} // namespace

void DistributionSpec::validate() const {
    require(std::isfinite(shift), "shift must be finite");
    std::visit(overloaded{
                   [](const Normal& d) {
                       require(std::isfinite(d.mean), "normal: mean must be finite");
                       require(positive_finite(d.sd), "normal: sd must be > 0");
                   },
                   [](const Exponential& d) {
                       require(positive_finite(d.rate), "exponential: rate must be > 0");
                   },
                   [](const LogNormal& d) {
                       require(std::isfinite(d.logMean), "lognormal: logMean must be finite");
                       require(positive_finite(d.logSd), "lognormal: logSd must be > 0");
                   },
                   [](const ChiSquare& d) {
                       require(positive_finite(d.df), "chisquare: df must be > 0");
                   },
                   [](const StudentT& d) {
                       require(positive_finite(d.df), "studentt: df must be > 0");
                       require(std::isfinite(d.location), "studentt: location must be finite");
                       require(positive_finite(d.scale), "studentt: scale must be > 0");
                   }},
               family);
}

std::string DistributionSpec::family_name() const {
    return std::visit(overloaded{[](const Normal&) { return std::string("normal"); },
                                 [](const Exponential&) { return std::string("exponential"); },
                                 [](const LogNormal&) { return std::string("lognormal"); },
                                 [](const ChiSquare&) { return std::string("chisquare"); },
                                 [](const StudentT&) { return std::string("studentt"); }},
                      family);
}

std::string DistributionSpec::describe() const {
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const Normal& d) { out << "N(" << d.mean << "," << d.sd << ")"; },
                   [&](const Exponential& d) { out << "Exp(" << d.rate << ")"; },
                   [&](const LogNormal& d) { out << "LN(" << d.logMean << "," << d.logSd << ")"; },
                   [&](const ChiSquare& d) { out << "Chi2(" << d.df << ")"; },
                   [&](const StudentT& d) {
                       out << "t(" << d.df << "," << d.location << "," << d.scale << ")";
                   }},
               family);
    if (shift != 0.0) out << (shift > 0 ? "+" : "") << shift;
    return out.str();
}

double DistributionSpec::mean() const {
    const double base = std::visit(
        overloaded{[](const Normal& d) { return d.mean; },
                   [](const Exponential& d) { return 1.0 / d.rate; },
                   [](const LogNormal& d) { return std::exp(d.logMean + 0.5 * d.logSd * d.logSd); },
                   [](const ChiSquare& d) { return d.df; },
                   // Median for df <= 1, where the mean does not exist.
                   [](const StudentT& d) { return d.location; }},
        family);
    return base + shift;
}

double DistributionSpec::sd() const {
    return std::visit(
        overloaded{[](const Normal& d) { return d.sd; },
                   [](const Exponential& d) { return 1.0 / d.rate; },
                   [](const LogNormal& d) {
                       const double s2 = d.logSd * d.logSd;
                       return std::sqrt(std::expm1(s2)) * std::exp(d.logMean + 0.5 * s2);
                   },
                   [](const ChiSquare& d) { return std::sqrt(2.0 * d.df); },
                   // Scale stands in as the spread when the variance is infinite.
                   [](const StudentT& d) {
                       return d.df > 2.0 ? d.scale * std::sqrt(d.df / (d.df - 2.0)) : d.scale;
                   }},
        family);
}

double DistributionSpec::support_lower() const {
    const bool half_line = std::holds_alternative<Exponential>(family) ||
                           std::holds_alternative<LogNormal>(family) ||
                           std::holds_alternative<ChiSquare>(family);
    return half_line ? shift : -kInf;
}

DistributionSpec make_normal(double mean, double sd, double shift) {
    DistributionSpec s{Normal{mean, sd}, shift};
    s.validate();
    return s;
}

DistributionSpec make_exponential(double rate, double shift) {
    DistributionSpec s{Exponential{rate}, shift};
    s.validate();
    return s;
}

DistributionSpec make_lognormal(double log_mean, double log_sd, double shift) {
    DistributionSpec s{LogNormal{log_mean, log_sd}, shift};
    s.validate();
    return s;
}

DistributionSpec make_chisquare(double df, double shift) {
    DistributionSpec s{ChiSquare{df}, shift};
    s.validate();
    return s;
}

DistributionSpec make_student_t(double df, double location, double scale, double shift) {
    DistributionSpec s{StudentT{df, location, scale}, shift};
    s.validate();
    return s;
}

double pdf(const DistributionSpec& spec, double x) {
    spec.validate();
    return base_pdf(spec.family, x - spec.shift);
}

double cdf(const DistributionSpec& spec, double x) {
    spec.validate();
    return base_cdf(spec.family, x - spec.shift);
}

double sf(const DistributionSpec& spec, double x) {
    spec.validate();
    return base_sf(spec.family, x - spec.shift);
}

double strict_lower_cdf(const DistributionSpec& spec, double x) { return cdf(spec, x); }

double quantile(const DistributionSpec& spec, double p) {
    spec.validate();
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("quantile: p must lie in (0, 1)");
    const double base = std::visit(
        overloaded{
            [p](const Normal& d) { return d.mean + d.sd * special::normal_quantile(p); },
            [p](const Exponential& d) { return -std::log1p(-p) / d.rate; },
            [p](const LogNormal& d) {
                return std::exp(d.logMean + d.logSd * special::normal_quantile(p));
            },
            [&spec, p](const ChiSquare&) {
                return base_quantile_by_root(DistributionSpec{spec.family, 0.0}, p);
            },
            [p](const StudentT& d) {
                return d.location + d.scale * special::student_t_quantile(p, d.df);
            }},
        spec.family);
    return base + spec.shift;
}

void sample_into(const DistributionSpec& spec, RandomStream& rng, std::size_t k,
                 std::vector<double>& out) {
    out.clear();
    out.reserve(k);
    auto& engine = rng.engine();
    std::visit(overloaded{
                   [&](const Normal& d) {
                       std::normal_distribution<double> dist(d.mean, d.sd);
                       for (std::size_t i = 0; i < k; ++i) out.push_back(dist(engine));
                   },
                   [&](const Exponential& d) {
                       std::exponential_distribution<double> dist(d.rate);
                       for (std::size_t i = 0; i < k; ++i) out.push_back(dist(engine));
                   },
                   [&](const LogNormal& d) {
                       std::lognormal_distribution<double> dist(d.logMean, d.logSd);
                       for (std::size_t i = 0; i < k; ++i) out.push_back(dist(engine));
                   },
                   [&](const ChiSquare& d) {
                       std::chi_squared_distribution<double> dist(d.df);
                       for (std::size_t i = 0; i < k; ++i) out.push_back(dist(engine));
                   },
                   [&](const StudentT& d) {
                       std::student_t_distribution<double> dist(d.df);
                       for (std::size_t i = 0; i < k; ++i) {
                           out.push_back(d.location + d.scale * dist(engine));
                       }
                   }},
               spec.family);
    if (spec.shift != 0.0) {
        for (double& v : out) v += spec.shift;
    }
}

std::vector<double> sample(const DistributionSpec& spec, RandomStream& rng, std::size_t k) {
    spec.validate();
    std::vector<double> out;
    sample_into(spec, rng, k, out);
    return out;
}

} // namespace wmw
