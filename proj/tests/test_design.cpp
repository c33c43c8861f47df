#include "wmw/design.hpp"
#include "wmw/errors.hpp"

#include <gtest/gtest.h>

using namespace wmw;

TEST(DesignGridTest, RespectsEpsilonBounds) {
    const auto g = design_grid(50, 0.1);
    ASSERT_FALSE(g.empty());
    EXPECT_EQ(g.front(), 5);
    EXPECT_EQ(g.back(), 45);
    EXPECT_EQ(g.size(), 41u);
    const auto g67 = design_grid(67, 0.1);
    EXPECT_EQ(g67.front(), 7);
    EXPECT_EQ(g67.back(), 60);
    const auto all = design_grid(10, 0.0);
    EXPECT_EQ(all.front(), 1);
    EXPECT_EQ(all.back(), 9);
    EXPECT_TRUE(design_grid(3, 0.45).empty());
}

TEST(BestPointTest, TiesGoToBalancedThenSmallerM) {
    const std::vector<CurvePoint> curve{
        {0.4, 4, 6, 0.7}, {0.5, 5, 5, 0.7}, {0.6, 6, 4, 0.7}, {0.3, 3, 7, 0.6}};
    EXPECT_EQ(best_point(curve, 10).m, 5);
    const std::vector<CurvePoint> odd{{4.0 / 9, 4, 5, 0.7}, {5.0 / 9, 5, 4, 0.7}};
    EXPECT_EQ(best_point(odd, 9).m, 4);
    const std::vector<CurvePoint> clear{{0.4, 4, 6, 0.7}, {0.5, 5, 5, 0.69}};
    EXPECT_EQ(best_point(clear, 10).m, 4);
    EXPECT_THROW(best_point({}, 10), ParameterError);
}

TEST(OptimalDesignTest, SymmetricPairIsBalanced) {
    const auto r = optimal_design(make_normal(0.75, 1.0), make_normal(0.0, 1.0), 50, 0.05, Side::OneSidedUpper);
    EXPECT_EQ(r.optimal, Design(25, 25));
    EXPECT_EQ(r.deficiencyAtHalf, 0.0);
    EXPECT_EQ(r.powerCurve.size(), 41u);
    // Curve is symmetric about the balanced design.
    for (std::size_t i = 0; i < r.powerCurve.size(); ++i) {
        EXPECT_NEAR(r.powerCurve[i].power, r.powerCurve[r.powerCurve.size() - 1 - i].power, 1e-12);
    }
}

TEST(OptimalDesignTest, MoreVariableFirstGroupGetsMoreObservationsForLargeN) {
    const auto r = optimal_design(make_normal(0.75, 2.0), make_normal(0.0, 1.0), 200, 0.05, Side::OneSidedUpper);
    EXPECT_GT(r.optimal.m(), 100);
    EXPECT_GE(r.optimalPower, r.powerCurve[80].power);
}

TEST(OptimalDesignTest, OptimumDominatesTheCurve) {
    const auto r = optimal_design(make_exponential(0.25), make_exponential(0.75), 50, 0.01, Side::OneSidedUpper);
    for (const auto& p : r.powerCurve) EXPECT_LE(p.power, r.optimalPower);
    EXPECT_GE(r.deficiencyAtHalf, 0.0);
}

TEST(OptimalDesignTest, EmptyGridThrows) {
    EXPECT_THROW(optimal_design(make_normal(1, 1), make_normal(0, 1), 3, 0.05, Side::OneSidedUpper, 0.45),
                 ParameterError);
}

TEST(PowerCurveTest, SnapsToRealizableDesigns) {
    const auto curve = power_curve(make_chisquare(5.0, 1.5), make_chisquare(5.0), 50, 0.05, Side::OneSidedUpper,
                                   {0.3, 0.5, 0.7});
    ASSERT_EQ(curve.size(), 3u);
    EXPECT_EQ(curve[0].m, 15);
    EXPECT_EQ(curve[1].m, 25);
    EXPECT_EQ(curve[2].m, 35);
    EXPECT_GT(curve[1].power, 0.05);
}
