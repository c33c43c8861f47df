#include "wmw/exact_null.hpp"

#include "wmw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wmw {

namespace {

using boost::multiprecision::msb;

// Coefficients of the Gaussian binomial [big + small choose small]_q, which
// is the generating function sum_u c(u; m, n) q^u solving the recurrence.
// Each step multiplies by (1 - q^(big + i)) / (1 - q^i); the division is
// done first as a truncated power series, so every intermediate value is
// bounded by C(big + i - 1, i - 1) and stays nonnegative.
template <class Int>
std::vector<Int> gaussian_binomial(long big, long small) {
    std::vector<Int> poly{Int(1)};
    std::vector<Int> series;
    for (long i = 1; i <= small; ++i) {
        const std::size_t degree = static_cast<std::size_t>(i * big);
        series.assign(degree + 1, Int(0));
        const std::size_t step = static_cast<std::size_t>(i);
        for (std::size_t d = 0; d <= degree; ++d) {
            Int v = d < poly.size() ? poly[d] : Int(0);
            if (d >= step) v += series[d - step];
            series[d] = v;
        }
        const std::size_t lag = static_cast<std::size_t>(big + i);
        for (std::size_t d = degree + 1; d-- > lag;) series[d] -= series[d - lag];
        poly.swap(series);
    }
    return poly;
}

// Fast path for counts below 2^128.
__extension__ using U128 = unsigned __int128;

BigCount to_big(U128 v) {
    BigCount hi = static_cast<std::uint64_t>(v >> 64);
    return (hi << 64) | BigCount(static_cast<std::uint64_t>(v));
}

double ratio(const BigCount& num, const BigCount& den) {
    if (num == 0) return 0.0;
    const unsigned bits = msb(den);
    const unsigned drop = bits > 1000 ? bits - 1000 : 0;
    const BigCount a = num >> drop;
    const BigCount b = den >> drop;
    return a.convert_to<double>() / b.convert_to<double>();
}

} // namespace

double ExactNullTable::upper_tail(long u) const {
    if (u <= 0) return 1.0;
    if (u > max_u()) return 0.0;
    BigCount tail = 0;
    for (long k = u; k <= max_u(); ++k) tail += counts[static_cast<std::size_t>(k)];
    return ratio(tail, total);
}

double ExactNullTable::lower_tail(long u) const {
    if (u < 0) return 0.0;
    if (u >= max_u()) return 1.0;
    BigCount tail = 0;
    for (long k = 0; k <= u; ++k) tail += counts[static_cast<std::size_t>(k)];
    return ratio(tail, total);
}

ExactNullTable build_table(long m, long n, std::size_t max_entries) {
    if (m < 1 || n < 1) throw ParameterError("build_table: m and n must be >= 1");
    const double entries = static_cast<double>(m) * static_cast<double>(n) + 1.0;
    if (entries > static_cast<double>(max_entries)) {
        std::ostringstream msg;
        msg << "build_table: " << m << "x" << n << " needs " << entries
            << " entries, limit is " << max_entries;
        throw ResourceError(msg.str());
    }

    ExactNullTable table;
    table.m = m;
    table.n = n;
    const long big = std::max(m, n);
    const long small = std::min(m, n);

    // log2 C(m+n, m) decides whether 128-bit words are wide enough.
    const double log2_total =
        (std::lgamma(double(m + n + 1)) - std::lgamma(double(m + 1)) - std::lgamma(double(n + 1))) /
        std::log(2.0);
    if (log2_total < 120.0) {
        const auto coeffs = gaussian_binomial<U128>(big, small);
        table.counts.reserve(coeffs.size());
        for (auto c : coeffs) table.counts.push_back(to_big(c));
    } else {
        table.counts = gaussian_binomial<BigCount>(big, small);
    }

    table.total = 0;
    for (const auto& c : table.counts) table.total += c;
    table.pmf.reserve(table.counts.size());
    for (const auto& c : table.counts) table.pmf.push_back(ratio(c, table.total));
    return table;
}

ExactMomentSums exact_moment_sums(const ExactNullTable& table) {
    ExactMomentSums sums{0, 0};
    for (std::size_t u = 0; u < table.counts.size(); ++u) {
        const BigCount w = table.counts[u] * u;
        sums.sum_u += w;
        sums.sum_u2 += w * u;
    }
    return sums;
}

CriticalRegion critical_value(const ExactNullTable& table, double alpha, CriticalSide side) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw ParameterError("critical_value: alpha must lie in (0, 0.5)");
    }
    const double per_tail = side == CriticalSide::TwoSided ? alpha / 2.0 : alpha;
    const long top = table.max_u();

    // Walk down from the top while the exact upper tail stays within level.
    long upper = top + 1;
    double upper_size = 0.0;
    BigCount tail = 0;
    for (long u = top; u >= 0; --u) {
        tail += table.counts[static_cast<std::size_t>(u)];
        const double size = ratio(tail, table.total);
        if (size > per_tail) break;
        upper = u;
        upper_size = size;
    }

    CriticalRegion region;
    if (upper > top) {
        region.degenerate = true;
        return region;
    }
    // The null distribution is symmetric about mn/2, so the lower region
    // mirrors the upper one.
    const long lower = top - upper;
    switch (side) {
    case CriticalSide::Upper:
        region.upper = upper;
        region.achievedSize = upper_size;
        break;
    case CriticalSide::Lower:
        region.lower = lower;
        region.achievedSize = upper_size;
        break;
    case CriticalSide::TwoSided:
        region.upper = upper;
        region.lower = lower;
        region.achievedSize = 2.0 * upper_size;
        break;
    }
    return region;
}

} // namespace wmw
