#include "wmw/design.hpp"
#include "wmw/errors.hpp"
#include "wmw/power.hpp"

#include <boost/math/distributions/non_central_t.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace wmw;
namespace bm = boost::math;

namespace {

double Phi(double z) { return bm::cdf(bm::normal_distribution<>(), z); }
double z_quantile(double p) { return bm::quantile(bm::normal_distribution<>(), p); }

} // namespace

TEST(PowerTest, EqualDistributionsGiveExactlyAlpha) {
    const auto F = make_chisquare(5.0);
    for (Side side : {Side::OneSidedUpper, Side::OneSidedLower, Side::TwoSided}) {
        for (double alpha : {0.01, 0.05, 0.1}) {
            const auto r = wmw_power({F, F, Design(13, 29), alpha, side});
            EXPECT_NEAR(r.approxPower, alpha, 1e-15) << to_string(side);
            EXPECT_EQ(r.muN, 0.0);
            EXPECT_NEAR(r.sigma2N, 1.0, 1e-14);
        }
    }
}

TEST(PowerTest, NormalApproximationFormula) {
    const double mu = 2.1;
    const double s2 = 0.8;
    const double s = std::sqrt(s2);
    EXPECT_NEAR(normal_approx_power(mu, s2, 0.05, Side::OneSidedUpper),
                1.0 - Phi((z_quantile(0.95) - mu) / s), 1e-14);
    EXPECT_NEAR(normal_approx_power(-mu, s2, 0.05, Side::OneSidedLower),
                1.0 - Phi((z_quantile(0.95) - mu) / s), 1e-14);
    EXPECT_NEAR(normal_approx_power(mu, s2, 0.05, Side::TwoSided),
                Phi((z_quantile(0.025) - mu) / s) + 1.0 - Phi((z_quantile(0.975) - mu) / s), 1e-14);
}

TEST(PowerTest, ZeroVarianceIsAStepFunction) {
    EXPECT_EQ(normal_approx_power(3.0, 0.0, 0.05, Side::OneSidedUpper), 1.0);
    EXPECT_EQ(normal_approx_power(1.0, 0.0, 0.05, Side::OneSidedUpper), 0.0);
    EXPECT_EQ(normal_approx_power(-3.0, 0.0, 0.05, Side::TwoSided), 1.0);
}

TEST(PowerTest, IncreasesWithShiftAndSampleSize) {
    const auto G = make_exponential(0.75);
    double last = 0.0;
    for (double a : {0.1, 0.3, 0.6, 1.0}) {
        const double p = wmw_power({make_exponential(0.75, a), G, Design(25, 25), 0.05, Side::OneSidedUpper}).approxPower;
        EXPECT_GT(p, last);
        last = p;
    }
    const auto F = make_exponential(0.75, 0.3);
    EXPECT_LT(wmw_power({F, G, Design(10, 10), 0.05, Side::OneSidedUpper}).approxPower,
              wmw_power({F, G, Design(40, 40), 0.05, Side::OneSidedUpper}).approxPower);
}

TEST(PowerTest, FlagsSmallGroups) {
    const auto F = make_normal(0.75, 1.0);
    const auto G = make_normal(0.0, 1.0);
    EXPECT_TRUE(wmw_power({F, G, Design(6, 44), 0.05, Side::OneSidedUpper}).lowConfidence);
    EXPECT_FALSE(wmw_power({F, G, Design(7, 43), 0.05, Side::OneSidedUpper}).lowConfidence);
    EXPECT_THROW(wmw_power({F, G, Design(7, 43), 1.0, Side::OneSidedUpper}), ParameterError);
}

TEST(PowerTest, SwappingGroupsMirrorsTheSide) {
    const auto F = make_lognormal(0.3, 0.8);
    const auto G = make_chisquare(2.0);
    const auto a = wmw_power({F, G, Design(18, 32), 0.05, Side::OneSidedUpper});
    const auto b = wmw_power({G, F, Design(32, 18), 0.05, Side::OneSidedLower});
    EXPECT_NEAR(a.approxPower, b.approxPower, 1e-9);
}

TEST(DeficiencyTest, SymmetricFormula) {
    EXPECT_DOUBLE_EQ(deficiency_symmetric(0.5), 0.0);
    EXPECT_NEAR(deficiency_symmetric(0.25), 1.0 / 3.0, 1e-15);
    for (double w = 0.01; w < 0.5; w += 0.01) {
        EXPECT_NEAR(deficiency_symmetric(w), deficiency_symmetric(1.0 - w), 1e-12);
        EXPECT_GT(deficiency_symmetric(w), deficiency_symmetric(w + 0.005));
    }
    EXPECT_THROW(deficiency_symmetric(0.0), ParameterError);
}

TEST(DeficiencyTest, SearchOnSyntheticPower) {
    // Power grows with N and is maximal at omega = 0.3.
    auto power = [](const Design& d) {
        const double w = d.omega();
        return 1.0 - std::exp(-0.01 * d.total() * (1.0 - 4.0 * (w - 0.3) * (w - 0.3)));
    };
    const auto r = deficiency_search(power, 50, 0.5);
    EXPECT_EQ(r.optimal, Design(15, 35));
    // Matching needs N' (1 - 0.16) >= 50.
    EXPECT_EQ(r.matchedTotal, 60);
    EXPECT_NEAR(r.deficiency, 0.2, 1e-12);
    EXPECT_FALSE(r.capReached);

    const auto at_opt = deficiency_search(power, 50, 0.3);
    EXPECT_EQ(at_opt.deficiency, 0.0);

    DeficiencyOptions tight;
    tight.cap_factor = 1;
    EXPECT_TRUE(deficiency_search(power, 50, 0.5, tight).capReached);
}

TEST(DeficiencyTest, SymmetricNormalPairHasNoDeficiencyAtHalf) {
    const auto r = deficiency_general(make_normal(0.75, 1.0), make_normal(0.0, 1.0), 50, 0.5, 0.05,
                                      Side::OneSidedUpper);
    EXPECT_EQ(r.deficiency, 0.0);
    EXPECT_EQ(r.optimal, Design(25, 25));
}

TEST(WelchTest, MatchesNoncentralTFromBoost) {
    const double mu1 = 0.75, sd1 = 3.0, mu2 = 0.0, sd2 = 1.0;
    for (long m : {10L, 25L, 37L}) {
        const Design d(m, 50 - m);
        const double v1 = sd1 * sd1 / m;
        const double v2 = sd2 * sd2 / d.n();
        const double df = (v1 + v2) * (v1 + v2) / (v1 * v1 / (m - 1) + v2 * v2 / (d.n() - 1));
        const double delta = (mu1 - mu2) / std::sqrt(v1 + v2);
        const double crit = bm::quantile(bm::students_t_distribution<>(df), 0.95);
        const double expect = bm::cdf(bm::complement(bm::non_central_t_distribution<>(df, delta), crit));
        EXPECT_NEAR(welch_power(mu1, sd1, mu2, sd2, d, 0.05, Side::OneSidedUpper).approxPower, expect, 1e-9);
    }
}

// Monte Carlo oracle for the Welch test itself.
TEST(WelchTest, AgreesWithSimulatedWelchTest) {
    const double mu1 = 0.75, sd1 = 2.0, sd2 = 1.0;
    const Design d(20, 30);
    std::mt19937_64 rng(99);
    std::normal_distribution<double> x(mu1, sd1);
    std::normal_distribution<double> y(0.0, sd2);
    const int reps = 40000;
    int rejected = 0;
    for (int r = 0; r < reps; ++r) {
        double sx = 0, sxx = 0, sy = 0, syy = 0;
        for (long i = 0; i < d.m(); ++i) {
            const double v = x(rng);
            sx += v;
            sxx += v * v;
        }
        for (long i = 0; i < d.n(); ++i) {
            const double v = y(rng);
            sy += v;
            syy += v * v;
        }
        const double m = d.m(), n = d.n();
        const double mx = sx / m, my = sy / n;
        const double vx = (sxx - m * mx * mx) / (m - 1) / m;
        const double vy = (syy - n * my * my) / (n - 1) / n;
        const double t = (mx - my) / std::sqrt(vx + vy);
        const double df = (vx + vy) * (vx + vy) / (vx * vx / (m - 1) + vy * vy / (n - 1));
        if (t > bm::quantile(bm::students_t_distribution<>(df), 0.95)) ++rejected;
    }
    const double mc = static_cast<double>(rejected) / reps;
    const double se = std::sqrt(mc * (1 - mc) / reps);
    EXPECT_NEAR(welch_power(mu1, sd1, 0.0, sd2, d, 0.05, Side::OneSidedUpper).approxPower, mc, 4 * se + 0.005);
}

TEST(WelchTest, OptimalOmegaAndDeficiency) {
    EXPECT_DOUBLE_EQ(welch_optimal_omega(1.0, 1.0), 0.5);
    EXPECT_DOUBLE_EQ(welch_optimal_omega(3.0, 1.0), 0.75);
    const auto r = welch_deficiency(make_normal(0.75, 3.0), make_normal(0.0, 1.0), 50, 0.5, 0.05,
                                    Side::OneSidedUpper);
    EXPECT_GT(r.deficiency, 0.1);
    EXPECT_NEAR(r.optimal.omega(), 0.75, 0.05);
    EXPECT_THROW(welch_deficiency(make_exponential(1.0), make_normal(0.0, 1.0), 50, 0.5, 0.05,
                                  Side::OneSidedUpper),
                 ParameterError);
    EXPECT_THROW(welch_power(0, 1, 0, 1, Design(1, 10), 0.05, Side::OneSidedUpper), ParameterError);
}

TEST(SideTest, ParsesAliases) {
    EXPECT_EQ(parse_side("upper"), Side::OneSidedUpper);
    EXPECT_EQ(parse_side("one_sided_lower"), Side::OneSidedLower);
    EXPECT_EQ(parse_side("two-sided"), Side::TwoSided);
    EXPECT_THROW(parse_side("sideways"), ParameterError);
}
