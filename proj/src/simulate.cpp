#include "wmw/simulate.hpp"

#include "wmw/errors.hpp"
#include "wmw/exact_null.hpp"
#include "wmw/random.hpp"
#include "wmw/special.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>
#include <vector>

namespace wmw {

namespace {

struct MeanVar {
    double mean;
    double var;
};

MeanVar mean_var(std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, v.size() > 1 ? ss / (n - 1.0) : 0.0};
}

bool reject_t(double t, double df, double alpha, Side side) {
    switch (side) {
    case Side::OneSidedUpper: return special::student_t_sf(t, df) <= alpha;
    case Side::OneSidedLower: return special::student_t_cdf(t, df) <= alpha;
    case Side::TwoSided: return 2.0 * special::student_t_sf(std::fabs(t), df) <= alpha;
    }
    return false;
}

CriticalSide to_critical_side(Side side) {
    switch (side) {
    case Side::OneSidedUpper: return CriticalSide::Upper;
    case Side::OneSidedLower: return CriticalSide::Lower;
    case Side::TwoSided: return CriticalSide::TwoSided;
    }
    return CriticalSide::Upper;
}

// Decides one trial from the two samples.
using Decision = std::function<bool(std::span<const double>, std::span<const double>)>;

} // namespace

std::string to_string(TestKind test) {
    switch (test) {
    case TestKind::WmwExact: return "wmw_exact";
    case TestKind::WmwNormal: return "wmw_normal";
    case TestKind::THom: return "t_hom";
    case TestKind::THet: return "t_het";
    }
    return "?";
}

TestKind parse_test(const std::string& text) {
    std::string t = text;
    std::replace(t.begin(), t.end(), '-', '_');
    if (t == "wmw_exact") return TestKind::WmwExact;
    if (t == "wmw_normal") return TestKind::WmwNormal;
    if (t == "t_hom") return TestKind::THom;
    if (t == "t_het") return TestKind::THet;
    throw ParameterError("unknown test '" + text + "' (expected wmw-exact, wmw-normal, t-hom, t-het)");
}

std::uint64_t compute_u(std::span<const double> xs, std::span<const double> ys) {
    std::vector<double> x(xs.begin(), xs.end());
    std::vector<double> y(ys.begin(), ys.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::uint64_t u = 0;
    std::size_t below = 0;  // ys that are <= current x
    for (double xi : x) {
        while (below < y.size() && y[below] <= xi) ++below;
        u += below;
    }
    return u;
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("WMW_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SimulationResult simulate_power(const SimulationPlan& plan, TestKind test) {
    plan.F.validate();
    plan.G.validate();
    if (plan.trials < 1) throw ParameterError("simulate_power: trials must be >= 1");
    if (!(plan.alpha > 0.0 && plan.alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");

    const long m = plan.design.m();
    const long n = plan.design.n();
    const double alpha = plan.alpha;
    const Side side = plan.side;

    SimulationResult result;
    result.testUsed = test;
    result.trials = plan.trials;

    Decision decide;
    if (test == TestKind::WmwExact) {
        try {
            const ExactNullTable table = build_table(m, n, plan.max_table_entries);
            const CriticalRegion region = critical_value(table, alpha, to_critical_side(side));
            result.exactSize = region.achievedSize;
            decide = [region](std::span<const double> xs, std::span<const double> ys) {
                if (region.degenerate) return false;
                const auto u = static_cast<long>(compute_u(xs, ys));
                return (region.upper && u >= *region.upper) || (region.lower && u <= *region.lower);
            };
        } catch (const ResourceError&) {
            result.fellBackToNormal = true;
            result.testUsed = TestKind::WmwNormal;
            test = TestKind::WmwNormal;
        }
    }
    if (test == TestKind::WmwNormal) {
        const NullMoments null = null_moments(plan.design);
        const double sd0 = std::sqrt(null.var0);
        const double z_upper = special::normal_quantile(1.0 - alpha);
        const double z_two = special::normal_quantile(1.0 - alpha / 2.0);
        decide = [=](std::span<const double> xs, std::span<const double> ys) {
            const double z = (static_cast<double>(compute_u(xs, ys)) - null.e0) / sd0;
            switch (side) {
            case Side::OneSidedUpper: return z > z_upper;
            case Side::OneSidedLower: return z < -z_upper;
            case Side::TwoSided: return std::fabs(z) > z_two;
            }
            return false;
        };
    } else if (test == TestKind::THom || test == TestKind::THet) {
        if (m < 2 || n < 2) throw ParameterError("t tests need at least 2 observations per group");
        const bool pooled = test == TestKind::THom;
        decide = [=](std::span<const double> xs, std::span<const double> ys) {
            const MeanVar a = mean_var(xs);
            const MeanVar b = mean_var(ys);
            const double dm = static_cast<double>(m);
            const double dn = static_cast<double>(n);
            double t;
            double df;
            if (pooled) {
                df = dm + dn - 2.0;
                const double sp2 = ((dm - 1.0) * a.var + (dn - 1.0) * b.var) / df;
                t = (a.mean - b.mean) / std::sqrt(sp2 * (1.0 / dm + 1.0 / dn));
            } else {
                const double v1 = a.var / dm;
                const double v2 = b.var / dn;
                t = (a.mean - b.mean) / std::sqrt(v1 + v2);
                df = (v1 + v2) * (v1 + v2) / (v1 * v1 / (dm - 1.0) + v2 * v2 / (dn - 1.0));
            }
            if (!std::isfinite(t) || !std::isfinite(df)) return false;
            return reject_t(t, df, alpha, side);
        };
    }

    const std::uint64_t blocks = (plan.trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    std::vector<std::uint64_t> rejections(blocks, 0);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        std::vector<double> xs;
        std::vector<double> ys;
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            RandomStream rng = RandomStream::substream(plan.seed, b);
            const std::uint64_t begin = b * kTrialsPerBlock;
            const std::uint64_t end = std::min(plan.trials, begin + kTrialsPerBlock);
            std::uint64_t count = 0;
            for (std::uint64_t t = begin; t < end; ++t) {
                sample_into(plan.F, rng, static_cast<std::size_t>(m), xs);
                sample_into(plan.G, rng, static_cast<std::size_t>(n), ys);
                if (decide(xs, ys)) ++count;
            }
            rejections[b] = count;
        }
    };

    const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(
        plan.threads > 0 ? plan.threads : default_thread_count(), blocks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    const std::uint64_t total = std::accumulate(rejections.begin(), rejections.end(), std::uint64_t{0});
    const double r = static_cast<double>(total) / static_cast<double>(plan.trials);
    result.rejectionRate = r;
    result.standardError = std::sqrt(r * (1.0 - r) / static_cast<double>(plan.trials));
    return result;
}

} // namespace wmw
