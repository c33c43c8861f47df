#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace wmw {

using BigCount = boost::multiprecision::cpp_int;

/// Exact distribution of U under H0 (continuous F = G, no ties).
struct ExactNullTable {
    long m = 0;
    long n = 0;
    /// counts[u] = number of the C(m+n, m) equally likely arrangements with U = u.
    std::vector<BigCount> counts;
    BigCount total;
    /// counts normalized by total, u = 0..mn.
    std::vector<double> pmf;

    long max_u() const { return m * n; }
    /// P(U >= u) summed from the exact counts.
    double upper_tail(long u) const;
    /// P(U <= u).
    double lower_tail(long u) const;
};

inline constexpr std::size_t kDefaultTableLimit = 1'000'000;

/// Builds the table with the recurrence
///   c(u; m, n) = c(u - n; m - 1, n) + c(u; m, n - 1),
/// conditioning on whether the largest observation is an x (adds n to U)
/// or a y. Throws ResourceError when mn + 1 exceeds `max_entries`.
ExactNullTable build_table(long m, long n, std::size_t max_entries = kDefaultTableLimit);

/// Exact first two moments from the integer counts:
/// sum_u u c(u) and sum_u u^2 c(u).
struct ExactMomentSums {
    BigCount sum_u;
    BigCount sum_u2;
};
ExactMomentSums exact_moment_sums(const ExactNullTable& table);

enum class CriticalSide { Upper, Lower, TwoSided };

struct CriticalRegion {
    /// Reject when U >= upper (Upper, TwoSided).
    std::optional<long> upper;
    /// Reject when U <= lower (Lower, TwoSided).
    std::optional<long> lower;
    /// Exact size of the rejection region.
    double achievedSize = 0.0;
    /// No nonempty rejection region attains the level.
    bool degenerate = false;
};

/// Upper: smallest u with P(U >= u) <= alpha. Lower: largest u with
/// P(U <= u) <= alpha. TwoSided: the symmetric pair at alpha / 2 each.
CriticalRegion critical_value(const ExactNullTable& table, double alpha, CriticalSide side);

} // namespace wmw
