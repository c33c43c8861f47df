#include "wmw/distributions.hpp"
#include "wmw/errors.hpp"
#include "wmw/quadrature.hpp"
#include "wmw/random.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/exponential.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace wmw;
namespace bm = boost::math;

namespace {

std::vector<DistributionSpec> zoo() {
    return {make_normal(0.75, 2.0),       make_normal(-1.0, 0.3),    make_exponential(0.75),
            make_exponential(2.0, 0.5),   make_lognormal(0.0, 1.0),  make_lognormal(1.2, 0.4, -1.0),
            make_chisquare(3.0),          make_chisquare(14.0, 1.5), make_chisquare(1.0),
            make_student_t(3.0, 17.0, 2.8), make_student_t(1.0, 0.0, 1.0), make_student_t(30.0, -2.0, 0.5)};
}

// Reference CDF from Boost, applied to the unshifted variate.
double oracle_cdf(const DistributionSpec& s, double x) {
    const double z = x - s.shift;
    if (auto* d = std::get_if<Normal>(&s.family)) return bm::cdf(bm::normal_distribution<>(d->mean, d->sd), z);
    if (auto* d = std::get_if<Exponential>(&s.family)) {
        return z <= 0 ? 0.0 : bm::cdf(bm::exponential_distribution<>(d->rate), z);
    }
    if (auto* d = std::get_if<LogNormal>(&s.family)) {
        return z <= 0 ? 0.0 : bm::cdf(bm::lognormal_distribution<>(d->logMean, d->logSd), z);
    }
    if (auto* d = std::get_if<ChiSquare>(&s.family)) {
        return z <= 0 ? 0.0 : bm::cdf(bm::chi_squared_distribution<>(d->df), z);
    }
    const auto& t = std::get<StudentT>(s.family);
    return bm::cdf(bm::students_t_distribution<>(t.df), (z - t.location) / t.scale);
}

} // namespace

TEST(DistributionsTest, CdfMatchesBoost) {
    for (const auto& s : zoo()) {
        for (double p : {0.001, 0.05, 0.3, 0.5, 0.8, 0.99}) {
            const double x = quantile(s, p);
            EXPECT_NEAR(cdf(s, x), oracle_cdf(s, x), 1e-12) << s.describe() << " x=" << x;
            EXPECT_NEAR(cdf(s, x) + sf(s, x), 1.0, 1e-14) << s.describe();
        }
    }
}

TEST(DistributionsTest, QuantileInvertsCdf) {
    for (const auto& s : zoo()) {
        for (double p : {1e-10, 1e-4, 0.02, 0.5, 0.93, 1 - 1e-6, 1 - 1e-10}) {
            const double x = quantile(s, p);
            if (p < 0.5) {
                EXPECT_NEAR(cdf(s, x), p, 1e-9 * p + 1e-15) << s.describe() << " p=" << p;
            } else {
                EXPECT_NEAR(sf(s, x), 1.0 - p, 1e-9 * (1.0 - p) + 1e-15) << s.describe() << " p=" << p;
            }
        }
    }
}

TEST(DistributionsTest, DensityIntegratesToCdf) {
    for (const auto& s : zoo()) {
        const double lo = quantile(s, 0.01);
        const double hi = quantile(s, 0.9);
        const auto r = integrate([&](double x) { return pdf(s, x); }, lo, hi);
        EXPECT_NEAR(r.value, cdf(s, hi) - cdf(s, lo), 1e-9) << s.describe();
    }
}

TEST(DistributionsTest, StrictLowerCdfEqualsCdfForContinuousFamilies) {
    for (const auto& s : zoo()) {
        for (double p : {0.1, 0.5, 0.9}) {
            const double x = quantile(s, p);
            EXPECT_EQ(strict_lower_cdf(s, x), cdf(s, x));
        }
    }
}

TEST(DistributionsTest, ShiftMovesSupportAndQuantiles) {
    const auto base = make_chisquare(5.0);
    const auto moved = base.shifted(1.5);
    EXPECT_DOUBLE_EQ(moved.support_lower(), 1.5);
    EXPECT_EQ(cdf(moved, 1.4), 0.0);
    EXPECT_NEAR(quantile(moved, 0.3), quantile(base, 0.3) + 1.5, 1e-12);
    EXPECT_NEAR(moved.mean(), 6.5, 1e-15);
}

TEST(DistributionsTest, MeansAndSds) {
    EXPECT_DOUBLE_EQ(make_exponential(0.25).mean(), 4.0);
    EXPECT_DOUBLE_EQ(make_chisquare(14.0).sd(), std::sqrt(28.0));
    EXPECT_NEAR(make_lognormal(0.0, 1.0).mean(), std::exp(0.5), 1e-15);
    EXPECT_NEAR(make_student_t(3.0, 17.0, 2.8).sd(), 2.8 * std::sqrt(3.0), 1e-14);
}

TEST(DistributionsTest, InvalidParametersThrow) {
    EXPECT_THROW(make_normal(0.0, 0.0), ParameterError);
    EXPECT_THROW(make_exponential(-1.0), ParameterError);
    EXPECT_THROW(make_lognormal(0.0, -0.1), ParameterError);
    EXPECT_THROW(make_chisquare(0.0), ParameterError);
    EXPECT_THROW(make_student_t(0.0, 0.0, 1.0), ParameterError);
    EXPECT_THROW(make_student_t(3.0, 0.0, 0.0), ParameterError);
    EXPECT_THROW(make_normal(std::nan(""), 1.0), ParameterError);
    EXPECT_THROW(quantile(make_normal(0.0, 1.0), 1.0), ParameterError);
}

// Two-sided Kolmogorov-Smirnov check of the samplers against the CDF. The
// critical value 1.95/sqrt(n) corresponds to a 0.1% level, and the seed is fixed.
TEST(DistributionsTest, SamplesPassKolmogorovSmirnov) {
    const std::size_t n = 20000;
    std::uint64_t seed = 11;
    for (const auto& s : zoo()) {
        RandomStream rng(seed++);
        std::vector<double> xs = sample(s, rng, n);
        ASSERT_EQ(xs.size(), n);
        std::sort(xs.begin(), xs.end());
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = oracle_cdf(s, xs[i]);
            d = std::max({d, c - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - c});
        }
        EXPECT_LT(d, 1.95 / std::sqrt(static_cast<double>(n))) << s.describe();
    }
}

TEST(DistributionsTest, SampleIntoReusesBuffer) {
    RandomStream a(5);
    RandomStream b(5);
    std::vector<double> buf{1.0, 2.0, 3.0};
    const auto s = make_normal(0.0, 1.0);
    sample_into(s, a, 10, buf);
    EXPECT_EQ(buf, sample(s, b, 10));
}
