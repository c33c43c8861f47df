#include "wmw/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace wmw {

namespace {

// Kronrod nodes on [0, 1] (symmetric), 15 points; odd indices are the
// embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * sum;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    const double error = std::fabs(kronrod - gauss);
    return {lo, hi, kronrod, error};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           std::span<const double> breakpoints,
                           const QuadratureOptions& options) {
    QuadratureResult result;
    if (hi < lo) {
        result = integrate(f, hi, lo, breakpoints, options);
        result.value = -result.value;
        return result;
    }
    if (!(hi > lo)) {
        result.converged = true;
        return result;
    }

    std::vector<double> edges{lo};
    for (double b : breakpoints) {
        if (b > lo && b < hi && std::isfinite(b)) edges.push_back(b);
    }
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Segment> queue;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Segment s = evaluate(f, edges[i], edges[i + 1]);
        total += s.value;
        error += s.error;
        queue.push(s);
    }
    result.evaluations = 15 * queue.size();

    auto tolerance = [&] { return std::max(options.abs_tolerance, options.rel_tolerance * std::fabs(total)); };

    while (error > tolerance() && queue.size() < options.max_subintervals) {
        Segment worst = queue.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) break;  // cannot split further
        queue.pop();
        Segment left = evaluate(f, worst.lo, mid);
        Segment right = evaluate(f, mid, worst.hi);
        result.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    // Re-sum to shed the drift from incremental updates.
    total = 0.0;
    error = 0.0;
    result.subintervals = queue.size();
    while (!queue.empty()) {
        total += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    result.value = total;
    result.error_bound = error;
    result.converged = error <= tolerance();
    return result;
}

} // namespace wmw
