#include "wmw/errors.hpp"
#include "wmw/moments.hpp"
#include "wmw/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace wmw;

TEST(DesignTest, FromOmegaRoundsAndClamps) {
    EXPECT_EQ(Design::from_omega(50, 0.5), Design(25, 25));
    EXPECT_EQ(Design::from_omega(67, 0.45), Design(30, 37));
    EXPECT_EQ(Design::from_omega(10, 0.01), Design(1, 9));
    EXPECT_EQ(Design::from_omega(10, 0.99), Design(9, 1));
    EXPECT_DOUBLE_EQ(Design(31, 36).omega(), 31.0 / 67.0);
    EXPECT_EQ(Design(3, 8).swapped(), Design(8, 3));
    EXPECT_THROW(Design(0, 5), ParameterError);
    EXPECT_THROW(Design::from_omega(1, 0.5), ParameterError);
    EXPECT_THROW(Design::from_omega(10, 1.0), ParameterError);
}

TEST(MomentsTest, NullMomentsClosedForm) {
    const auto nm = null_moments(Design(7, 11));
    EXPECT_DOUBLE_EQ(nm.e0, 38.5);
    EXPECT_DOUBLE_EQ(nm.var0, 77.0 * 19.0 / 12.0);
}

TEST(MomentsTest, NullAlternativeReducesToNullMoments) {
    const Design d(9, 14);
    const auto s = alt_moments(d, make_lognormal(0.0, 1.0), make_lognormal(0.0, 1.0));
    EXPECT_NEAR(s.e1, s.e0, 1e-12);
    EXPECT_NEAR(s.var1, s.var0, 1e-9);
    EXPECT_NEAR(s.muN, 0.0, 1e-12);
    EXPECT_NEAR(s.sigma2N, 1.0, 1e-12);
}

TEST(MomentsTest, SymmetricNormalVarianceDoesNotDependOnOmega) {
    // For a location shift of a symmetric law, int G^2 f = int (1-F)^2 g, so
    // sigma2N depends on the design only through N.
    const auto F = make_normal(0.75, 1.0);
    const auto G = make_normal(0.0, 1.0);
    const double ref = alt_moments(Design(25, 25), F, G).sigma2N;
    for (long m = 5; m <= 45; m += 5) {
        EXPECT_NEAR(alt_moments(Design(m, 50 - m), F, G).sigma2N, ref, 1e-9) << m;
    }
}

TEST(MomentsTest, StandardizedMeanMatchesGeneralFormula) {
    const auto F = make_normal(0.75, 1.0);
    const auto G = make_normal(0.0, 1.0);
    const auto ints = pair_integrals(F, G);
    const auto s = alt_moments(Design(20, 30), ints);
    EXPECT_NEAR(standardized_mean_symmetric(0.4, 50, ints.pXgeY), s.muN, 1e-12);
}

TEST(MomentsTest, NegativeVarianceIsClampedAndFlagged) {
    ExceedanceSummary bogus;
    bogus.pXgeY = 0.9;
    bogus.intG2f = 0.0;
    bogus.int1mF2g = 0.0;
    const auto s = alt_moments(Design(20, 20), bogus);
    EXPECT_TRUE(s.varianceClamped);
    EXPECT_EQ(s.var1, 0.0);
}

// Monte Carlo oracle: U counted by brute force over all pairs.
TEST(MomentsTest, AlternativeMomentsAgreeWithSimulation) {
    struct Case {
        DistributionSpec F;
        DistributionSpec G;
        long m;
        long n;
    };
    const std::vector<Case> cases{
        {make_chisquare(6.0), make_chisquare(3.0), 7, 11},
        {make_normal(0.75, 3.0), make_normal(0.0, 1.0), 12, 5},
        {make_student_t(3.0, 17.0, 2.8), make_chisquare(14.0), 9, 9},
    };
    const int reps = 200000;
    std::uint64_t seed = 3;
    for (const auto& c : cases) {
        RandomStream rng(seed++);
        std::vector<double> xs;
        std::vector<double> ys;
        double sum = 0.0;
        double sum2 = 0.0;
        for (int r = 0; r < reps; ++r) {
            sample_into(c.F, rng, static_cast<std::size_t>(c.m), xs);
            sample_into(c.G, rng, static_cast<std::size_t>(c.n), ys);
            double u = 0.0;
            for (double x : xs) {
                for (double y : ys) u += x >= y ? 1.0 : 0.0;
            }
            sum += u;
            sum2 += u * u;
        }
        const double mean = sum / reps;
        const double var = (sum2 - reps * mean * mean) / (reps - 1);
        const auto s = alt_moments(Design(c.m, c.n), c.F, c.G);
        // 5 standard errors; the variance SE uses a normal-theory bound
        // inflated by 2 for excess kurtosis.
        EXPECT_NEAR(mean, s.e1, 5.0 * std::sqrt(s.var1 / reps)) << c.F.describe();
        EXPECT_NEAR(var, s.var1, 5.0 * 2.0 * s.var1 * std::sqrt(2.0 / reps)) << c.F.describe();
    }
}
