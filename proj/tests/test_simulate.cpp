#include "wmw/errors.hpp"
#include "wmw/exact_null.hpp"
#include "wmw/random.hpp"
#include "wmw/simulate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace wmw;

namespace {

std::uint64_t brute_u(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::uint64_t u = 0;
    for (double x : xs) {
        for (double y : ys) u += x >= y ? 1 : 0;
    }
    return u;
}

SimulationPlan plan_for(DistributionSpec F, DistributionSpec G, Design d, std::uint64_t trials, std::uint64_t seed) {
    SimulationPlan p;
    p.F = std::move(F);
    p.G = std::move(G);
    p.design = d;
    p.trials = trials;
    p.seed = seed;
    return p;
}

} // namespace

TEST(ComputeUTest, MatchesBruteForce) {
    RandomStream rng(8);
    const auto F = make_normal(0.0, 1.0);
    for (std::size_t m : {1u, 3u, 17u, 40u}) {
        for (std::size_t n : {1u, 5u, 23u}) {
            const auto xs = sample(F, rng, m);
            const auto ys = sample(F, rng, n);
            EXPECT_EQ(compute_u(xs, ys), brute_u(xs, ys));
        }
    }
}

TEST(ComputeUTest, TiesCountAsExceedances) {
    const std::vector<double> xs{1.0, 2.0, 2.0};
    const std::vector<double> ys{2.0, 0.5};
    EXPECT_EQ(compute_u(xs, ys), brute_u(xs, ys));
    EXPECT_EQ(compute_u(xs, ys), 5u);
}

TEST(RandomStreamTest, SubstreamsAreDistinctAndReproducible) {
    auto a = RandomStream::substream(1, 0);
    auto b = RandomStream::substream(1, 1);
    auto c = RandomStream::substream(1, 0);
    const auto x = a.next();
    EXPECT_NE(x, b.next());
    EXPECT_EQ(x, c.next());
    EXPECT_NE(splitmix64(1), splitmix64(2));
}

TEST(SimulateTest, DeterministicAcrossThreadCounts) {
    auto plan = plan_for(make_chisquare(5.0, 1.5), make_chisquare(5.0), Design(20, 30), 5500, 42);
    plan.threads = 1;
    const auto one = simulate_power(plan, TestKind::WmwExact);
    plan.threads = 4;
    const auto four = simulate_power(plan, TestKind::WmwExact);
    EXPECT_EQ(one.rejectionRate, four.rejectionRate);
    plan.seed = 43;
    EXPECT_NE(simulate_power(plan, TestKind::WmwExact).rejectionRate, one.rejectionRate);
}

TEST(SimulateTest, ExactRuleHoldsSizeUnderNull) {
    const auto F = make_lognormal(0.0, 1.0);
    auto plan = plan_for(F, F, Design(12, 15), 40000, 5);
    const auto r = simulate_power(plan, TestKind::WmwExact);
    const auto region = critical_value(build_table(12, 15), 0.05, CriticalSide::Upper);
    EXPECT_DOUBLE_EQ(r.exactSize, region.achievedSize);
    const double se = std::sqrt(r.exactSize * (1 - r.exactSize) / 40000.0);
    EXPECT_NEAR(r.rejectionRate, r.exactSize, 4.0 * se);
    EXPECT_NEAR(r.standardError, std::sqrt(r.rejectionRate * (1 - r.rejectionRate) / 40000.0), 1e-15);
}

TEST(SimulateTest, AllTestsHoldSizeUnderNormalNull) {
    const auto F = make_normal(0.0, 1.0);
    for (TestKind test : {TestKind::WmwNormal, TestKind::THom, TestKind::THet}) {
        for (Side side : {Side::OneSidedUpper, Side::OneSidedLower, Side::TwoSided}) {
            auto plan = plan_for(F, F, Design(20, 20), 20000, 17);
            plan.side = side;
            const auto r = simulate_power(plan, test);
            EXPECT_NEAR(r.rejectionRate, 0.05, 4.0 * std::sqrt(0.05 * 0.95 / 20000.0) + 0.003)
                << to_string(test) << " " << to_string(side);
        }
    }
}

TEST(SimulateTest, FallsBackToNormalRuleWhenTableIsTooLarge) {
    auto plan = plan_for(make_normal(0.5, 1.0), make_normal(0.0, 1.0), Design(30, 30), 1000, 1);
    plan.max_table_entries = 100;
    const auto r = simulate_power(plan, TestKind::WmwExact);
    EXPECT_TRUE(r.fellBackToNormal);
    EXPECT_EQ(r.testUsed, TestKind::WmwNormal);
}

TEST(SimulateTest, ValidatesArguments) {
    auto plan = plan_for(make_normal(0.0, 1.0), make_normal(0.0, 1.0), Design(1, 5), 100, 1);
    EXPECT_THROW(simulate_power(plan, TestKind::THet), ParameterError);
    plan.trials = 0;
    EXPECT_THROW(simulate_power(plan, TestKind::WmwNormal), ParameterError);
    EXPECT_THROW(parse_test("z-test"), ParameterError);
    EXPECT_EQ(parse_test("t-het"), TestKind::THet);
    EXPECT_EQ(parse_test("wmw_exact"), TestKind::WmwExact);
}
