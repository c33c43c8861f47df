#include "wmw/special.hpp"

#include "wmw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wmw::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Series for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < 100000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NumericalError("gamma_p: series did not converge", std::fabs(term));
}

// Continued fraction for Q(a, x), valid for x >= a + 1 (modified Lentz).
double gamma_q_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
        }
    }
    throw NumericalError("gamma_q: continued fraction did not converge", 0.0);
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 100000; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return h;
    }
    throw NumericalError("beta_inc: continued fraction did not converge", 0.0);
}

} // namespace

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ParameterError("normal_quantile: p must lie in (0, 1)");
    }
    const double q = p - 0.5;
    double val;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        val = q *
              (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r +
                    67265.770927008700853) * r + 45921.953931549871457) * r +
                  13731.693765509461125) * r + 1971.5909503065514427) * r +
                133.14166789178437745) * r + 3.387132872796366608) /
              (((((((r * 5226.495278852545925 + 28729.085735721942674) * r +
                    39307.89580009271061) * r + 21213.794301586595867) * r +
                  5394.1960214247511077) * r + 687.1870074920579083) * r +
                42.313330701600911252) * r + 1.0);
        return val;
    }
    double r = q < 0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r +
                    0.24178072517745061177) * r + 1.27045825245236838258) * r +
                  3.64784832476320460504) * r + 5.7694972214606914055) * r +
                4.6303378461565452959) * r + 1.42343711074968357734) /
              (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r +
                    0.0151986665636164571966) * r + 0.14810397642748007459) * r +
                  0.68976733498510000455) * r + 1.6763848301838038494) * r +
                2.05319162663775882187) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r +
                    0.0012426609473880784386) * r + 0.026532189526576123093) * r +
                  0.29656057182850489123) * r + 1.7848265399172913358) * r +
                5.4637849111641143699) * r + 6.6579046435011037772) /
              (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r +
                    1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
                  0.0148753612908506148525) * r + 0.13692988092273580531) * r +
                0.59983220655588793769) * r + 1.0);
    }
    return q < 0.0 ? -val : val;
}

double gamma_p(double a, double x) {
    if (!(a > 0.0)) throw ParameterError("gamma_p: shape must be positive");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0)) throw ParameterError("gamma_q: shape must be positive");
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

double beta_inc(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) {
        throw ParameterError("beta_inc: shape parameters must be positive");
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * beta_fraction(a, b, x) / a;
    }
    return 1.0 - std::exp(log_front) * beta_fraction(b, a, 1.0 - x) / b;
}

namespace {

// P(T > |t|) for central t.
double student_t_upper_tail(double t, double df) {
    const double t2 = t * t;
    if (t2 < df) {
        // I_x(df/2, 1/2) with x close to one; use the complementary argument.
        const double y = t2 / (df + t2);
        return 0.5 * (1.0 - beta_inc(0.5, 0.5 * df, y));
    }
    return 0.5 * beta_inc(0.5 * df, 0.5, df / (df + t2));
}

} // namespace

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw ParameterError("student_t_cdf: df must be positive");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double tail = student_t_upper_tail(t, df);
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_sf(double t, double df) {
    if (!(df > 0.0)) throw ParameterError("student_t_sf: df must be positive");
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    const double tail = student_t_upper_tail(t, df);
    return t > 0.0 ? tail : 1.0 - tail;
}

double student_t_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ParameterError("student_t_quantile: p must lie in (0, 1)");
    }
    if (!(df > 0.0)) throw ParameterError("student_t_quantile: df must be positive");
    if (p == 0.5) return 0.0;
    // Solve in the upper tail and reflect.
    const double tail = p < 0.5 ? p : 1.0 - p;
    auto f = [&](double t) { return student_t_sf(t, df) - tail; };
    double hi = std::max(1.0, normal_quantile(1.0 - tail));
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e300) throw NumericalError("student_t_quantile: bracket overflow", hi);
    }
    const double t = find_root(f, 0.0, hi);
    return p < 0.5 ? -t : t;
}

double noncentral_t_cdf(double t, double df, double noncentrality) {
    if (!(df > 0.0)) throw ParameterError("noncentral_t_cdf: df must be positive");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;

    constexpr int kMaxTerms = 2000;
    constexpr double kErrMax = 1e-13;

    bool negate = false;
    double tt = t;
    double del = noncentrality;
    if (t < 0.0) {
        negate = true;
        tt = -t;
        del = -noncentrality;
    }

    double tnc = 0.0;
    const double x = tt * tt / (tt * tt + df);
    if (x > 0.0) {
        const double lambda = del * del;
        double p = 0.5 * std::exp(-0.5 * lambda);
        if (p == 0.0) {
            throw NumericalError("noncentral_t_cdf: noncentrality too large", 1.0);
        }
        double q = std::sqrt(2.0 / std::numbers::pi) * p * del;
        double s = 0.5 - p;
        if (s < 1e-7) s = -0.5 * std::expm1(-0.5 * lambda);
        double a = 0.5;
        const double b = 0.5 * df;
        const double rxb = std::pow(df / (tt * tt + df), b);
        const double albeta = std::lgamma(0.5) + std::lgamma(b) - std::lgamma(0.5 + b);
        double xodd = beta_inc(a, b, x);
        double godd = 2.0 * rxb * std::exp(a * std::log(x) - albeta);
        const double bx = b * x;
        double xeven = bx < kEps ? bx : 1.0 - rxb;
        double geven = bx * rxb;
        tnc = p * xodd + q * xeven;

        bool converged = false;
        for (int it = 1; it <= kMaxTerms; ++it) {
            a += 1.0;
            xodd -= godd;
            xeven -= geven;
            godd *= x * (a + b - 1.0) / a;
            geven *= x * (a + b - 0.5) / (a + 0.5);
            p *= lambda / (2 * it);
            q *= lambda / (2 * it + 1);
            tnc += p * xodd + q * xeven;
            s -= p;
            if (s < -1e-10 || (s <= 0.0 && it > 1)) {
                converged = true;
                break;
            }
            if (std::fabs(2.0 * s * (xodd - godd)) < kErrMax) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw NumericalError("noncentral_t_cdf: series did not converge", s);
        }
    }
    tnc += normal_cdf(-del);
    tnc = std::clamp(tnc, 0.0, 1.0);
    return negate ? 1.0 - tnc : tnc;
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 RootOptions options) {
    double a = lo;
    double b = hi;
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw NumericalError("find_root: interval does not bracket a root", std::fabs(b - a));
    }
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * kEps * std::fabs(b) + 0.5 * options.x_tolerance +
                           std::numeric_limits<double>::denorm_min();
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0) return b;
        if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    throw NumericalError("find_root: iteration limit reached", std::fabs(c - b));
}

} // namespace wmw::special
