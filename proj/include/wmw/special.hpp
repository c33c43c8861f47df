#pragma once

#include <functional>

// Special functions needed by the distribution families and the Welch
// baseline. Everything here is self-contained; no external statistics
// runtime is used.

namespace wmw::special {

double normal_pdf(double z);
double normal_cdf(double z);
double normal_sf(double z);

/// Inverse of the standard normal CDF (Wichura's AS 241, ~1e-16 relative).
/// Requires 0 < p < 1.
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a, x) and its complement Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

/// CDF and survival function of Student's t with `df` degrees of freedom.
double student_t_cdf(double t, double df);
double student_t_sf(double t, double df);
double student_t_quantile(double p, double df);

/// P(T <= t) for the noncentral t distribution (Lenth's algorithm AS 243).
double noncentral_t_cdf(double t, double df, double noncentrality);

struct RootOptions {
    double x_tolerance = 0.0;  // absolute; 0 means "down to a few ulps"
    int max_iterations = 300;
};

/// Brent's method on a bracket [lo, hi] with f(lo) and f(hi) of opposite
/// sign (or one of them zero). Throws NumericalError if the bracket is
/// invalid or iterations run out.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 RootOptions options = {});

} // namespace wmw::special
