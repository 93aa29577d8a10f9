#pragma once

#include <functional>
#include <span>
#include <vector>

namespace levyconc {

struct QuadConfig {
    double rel_tol = 1e-10;
    double abs_floor = 1e-14;
    int max_blocks = 700;  // log-width-1 blocks walked toward 0 or infinity
};

struct QuadOutcome {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = true;
    bool diverging = false;  // tail blocks kept growing; value is meaningless
};

/// Integral of f over (a, b), 0 <= a, b <= +inf, computed in log coordinates
/// (r = e^u) so power-law singularities at 0 and slowly decaying tails are
/// handled by fixed-width blocks. Known kinks (truncation radii, support
/// edges) must be passed as breakpoints; blocks never straddle them.
/// a == 0 walks blocks toward 0 until their contribution is negligible;
/// b == +inf walks upward and flags divergence if blocks stop shrinking.
QuadOutcome integrate_radial(const std::function<double(double)>& f, double a, double b,
                             std::span<const double> breakpoints, const QuadConfig& cfg = {});

/// Gauss-Kronrod on a single finite interval, no substitution.
QuadOutcome integrate_segment(const std::function<double(double)>& f, double a, double b,
                              const QuadConfig& cfg = {});

/// The conditionally convergent integral  J(alpha) = \int_0^inf sin(v) v^{-alpha} dv,
/// 0 < alpha < 2, summed over half-periods with iterated averaging of the
/// alternating partial sums.
double sin_power_integral(double alpha);

/// \int_0^inf (sin(u r) - u r 1_{r<=1}) r^{-1-alpha} dr  for u > 0.
/// The compensated imaginary part of a one-sided power-law exponent.
double compensated_sine_integral(double alpha, double u);

}  // namespace levyconc
