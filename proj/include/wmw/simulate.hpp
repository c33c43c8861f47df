#pragma once

#include "wmw/distributions.hpp"
#include "wmw/moments.hpp"
#include "wmw/power.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace wmw {

enum class TestKind { WmwExact, WmwNormal, THom, THet };

std::string to_string(TestKind test);
/// Accepts "wmw-exact", "wmw-normal", "t-hom", "t-het" (underscores also).
TestKind parse_test(const std::string& text);

struct SimulationPlan {
    DistributionSpec F;
    DistributionSpec G;
    Design design{1, 1};
    double alpha = 0.05;
    Side side = Side::OneSidedUpper;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    /// Worker threads; 0 reads WMW_THREADS, then falls back to the hardware count.
    unsigned threads = 0;
    std::size_t max_table_entries = 1'000'000;
};

struct SimulationResult {
    double rejectionRate = 0.0;
    double standardError = 0.0;
    TestKind testUsed = TestKind::WmwExact;
    std::uint64_t trials = 0;
    /// wmw_exact was requested but the exact table exceeded its limit.
    bool fellBackToNormal = false;
    /// Exact size of the rejection region (wmw_exact only).
    double exactSize = 0.0;
};

/// Trials per independently seeded block. Block b draws from
/// RandomStream::substream(seed, b), so results do not depend on the
/// number of threads.
inline constexpr std::uint64_t kTrialsPerBlock = 1000;

SimulationResult simulate_power(const SimulationPlan& plan, TestKind test);

/// Number of pairs (x, y) with x >= y, by sorting and merging.
std::uint64_t compute_u(std::span<const double> xs, std::span<const double> ys);

/// Default worker count (WMW_THREADS or hardware concurrency).
unsigned default_thread_count();

} // namespace wmw
