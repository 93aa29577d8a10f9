#pragma once

#include <vector>

#include "levyconc/measure.hpp"

namespace levyconc {

// ---------------------------------------------------------------------------
// Stable family. In one dimension the density is w_-/|x|^{1+alpha} on the
// negative half-line and w_+/|x|^{1+alpha} on the positive one (both equal
// to `intensity` in the symmetric case). In dimension d >= 2 the measure is
// spherically symmetric with total spherical mass `spherical_mass` and
// radial density r^{-1-alpha}.
// ---------------------------------------------------------------------------
struct StableFamily {
    double alpha = 1.0;
    double intensity = 1.0;  // the paper-facing name is intensity, not the VM constant
    int dimension = 1;
    double spherical_mass = 0.0;  // d >= 2 only
    double w_minus = 0.0, w_plus = 0.0;
    std::vector<double> drift;

    static StableFamily symmetric_1d(double alpha, double intensity, double drift = 0.0);
    static StableFamily asymmetric_1d(double alpha, double w_minus, double w_plus,
                                      double drift = 0.0);
    static StableFamily isotropic(double alpha, int dimension, double spherical_mass);

    LevyMeasure measure() const;
    bool symmetric() const { return w_minus == w_plus; }

    /// h_c(t) in closed form: (sigma_total t / (2-alpha) c)^{1/alpha} with
    /// sigma_total = w_- + w_+ in 1-D.
    double h_closed_form(double c, double t) const;
    /// The exact value of the tail/variance ratio constant, (2-alpha)/alpha.
    double A_exact() const { return (2.0 - alpha) / alpha; }
    /// (2-alpha)/(alpha-1) for alpha > 1, +inf otherwise.
    double K_exact() const;

    /// Coefficient s in the characteristic exponent psi(u) = -s |u|^alpha of
    /// the symmetric case (isotropic in d >= 2), obtained by quadrature of
    /// the exponent integrand rather than from Gamma-function constants.
    double psi_coefficient() const;
};

/// E |<theta, e_1>|^alpha for theta uniform on S^{d-1}.
double sphere_direction_moment(int dimension, double alpha);

// ---------------------------------------------------------------------------
// Symmetric truncated stable family: density intensity/|x|^{1+alpha} on
// |x| <= trunc. All closed forms below shadow the generic pipeline; tests
// enforce agreement between the two.
// ---------------------------------------------------------------------------
struct TruncatedStableFamily {
    double alpha = 1.0;
    double intensity = 1.0;
    double trunc = 1.0;

    LevyMeasure measure() const;

    double V_closed_form(double R) const;
    double nu_bar_closed_form(double R) const;

    /// Regime switch time t* = (2-alpha) c trunc^alpha / (2 intensity).
    double regime_switch(double c) const;
    /// Piecewise h_c(t): power-alpha branch below t*, square-root branch above.
    double h_closed_form(double c, double t) const;

    /// h with the conventional choice c = alpha / 4(2-alpha); switches branch
    /// at t = alpha trunc^alpha / (8 intensity).
    double h_envelope(double t) const;

    double A_exact() const { return (2.0 - alpha) / alpha; }
    double K_exact() const;

    /// Upper bound on P(f(X_t) - m(t) >= x), piecewise at x = trunc *
    /// tail_factor(alpha), clamped into (0,1].
    double tail_bound(double t, double x) const;

    /// Threshold x beyond which P(f(X_t) - m(t) >= x) <= q: the minimum of
    /// the regime threshold and the truncation-level threshold
    /// [1 + g_{c'}(q/2)] trunc with c' = intensity t / (2-alpha) trunc^alpha.
    double tail_threshold(double q, double t) const;
};

/// 1 + 3 g_{alpha/4(2-alpha)}(1/4): the prefactor turning h_envelope into a
/// median bound.
double median_prefactor(double alpha);

/// c_alpha = 1 + max(1, (1+2e) alpha / 2(2-alpha)); dominates
/// 1 + g_{q alpha/2(2-alpha)}(q/2) for every q in (0,1).
double tail_factor(double alpha);

// ---------------------------------------------------------------------------
// Compound Poisson family: finitely many radial atoms (radius, rate), the
// rates summing to the total jump rate. Direction handling follows the
// half-line weights in 1-D.
// ---------------------------------------------------------------------------
struct CompoundPoissonFamily {
    std::vector<double> radii;  // ascending
    std::vector<double> rates;  // absolute rates, sum = total rate
    int dimension = 1;
    double w_minus = 1.0, w_plus = 1.0;
    std::vector<double> drift;

    double total_rate() const;
    LevyMeasure measure() const;
};

}  // namespace levyconc
