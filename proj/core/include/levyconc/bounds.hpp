#pragma once

#include <optional>
#include <string>

#include "levyconc/measure.hpp"

namespace levyconc {

/// The unique y >= 0 with  y - (y+c) log(1 + y/c) = log(x),  c > 0,
/// 0 < x <= 1. The left side decreases strictly from 0 to -inf, so this is
/// the inverse of a Bennett-type exponent: it converts a probability level
/// into a deviation multiple. Bisection with Newton polish, |y| error < 1e-12.
double bennett_inverse(double c, double x);

/// Leftmost solution of V(x)/x^2 = c/t. Bracket scan over the measure's log
/// grid (breakpoints included) left to right, bisection inside the first
/// straddling cell, residual-certified to 1e-9 relative; cells whose sign
/// change is a jump rather than a root are skipped. Throws LevelNeverAttained
/// when the level is never reached, NonConvergence when bisection stalls.
double h_scale(const ScaleFunctions& sf, double c, double t);

/// Solution of V(x)/x^2 + M(x)/x = 1/t (the left side is strictly
/// decreasing). Throws InfiniteMean when the tail moment diverges.
double x0_scale(const ScaleFunctions& sf, double t);

/// E_c(t) = t || b - int_{h<|y|<=1} y nu(dy) + int_{1<|y|<=h} y nu(dy) ||
/// with h = h_c(t); exactly one shell is nonempty. Zero for symmetric
/// driftless measures.
double drift_term(const ScaleFunctions& sf, double c, double t);

struct MedianBoundResult {
    double h = 0.0;          // h_c(t)
    double condition = 0.0;  // t nu_bar(h_c(t))
    double e_term = 0.0;     // E_c(t)
    double standard = 0.0;   // h (1 + 3 g_c(1/4)) + E_c(t), valid iff condition <= 1/4
    double refined = 0.0;    // h (1 + g_c(1/4) + 2 g_c(1/2 - condition)) + E_c(t)
    bool standard_valid = false;
};

/// Median bound for f(X_t) around f(0). The standard form requires
/// t nu_bar(h) <= 1/4 (tolerance 1e-9 relative for boundary cases); the
/// refined form only requires < 1/2. Throws ConditionViolated beyond that.
MedianBoundResult median_bound(const ScaleFunctions& sf, double c, double t);

/// Tail bound around the truncated center m(c,t), for deviations x > x' > 0:
///   A c nu_bar(x')/nu_bar(h_c(t)) + exp(u - (u+c) log(1+u/c)),
/// u = (x-x')/h_c(t). Requires nu_bar(h_c(t)) > 0 and the tail/variance
/// inequality to hold at h_c(t) with the supplied A.
double median_tail_bound(const ScaleFunctions& sf, double c, double t, double x, double x_prime,
                         double A);

/// Threshold [1 + g_{q/2A}(q/2)] h_{q/2A}(t); both tails of f(X_t) - m(t)
/// are <= q beyond it.
double median_tail_threshold(const ScaleFunctions& sf, double q, double t, double A);

/// A c + exp(b - (b+c) log(1+b/c)): bound on P(f(X_t) - E f(X_t) >= (b+cK) h_c(t)).
double mean_tail_bound(double b, double c, double A);

/// Threshold [qK/2A + g_{q/2A}(q/2)] h_{q/2A}(t) for the mean-centered tail.
/// Requires a finite K; throws InfiniteMean otherwise.
double mean_tail_threshold(const ScaleFunctions& sf, double q, double t, double A, double K_const);

/// Median-concentration profile of the process truncated at R:
///   H^(R)(x) = exp(x/2R - (x/2R + tV(R)/R^2) log(1 + Rx/2tV(R))).
double truncation_profile(const ScaleFunctions& sf, double R, double t, double x);

/// Inverse profile I^(R)(y) = sup{x >= 0 : H^(R)(x) >= y} = 2R g_gamma(y)
/// with gamma = tV(R)/R^2; at R = h_c(t) this is 2 h_c(t) g_c(y).
double truncation_profile_inverse(const ScaleFunctions& sf, double R, double t, double y);

// ---------------------------------------------------------------------------
// One evaluated row for reporting: everything the theorems yield at a single
// (t, c-or-q), with validity notes instead of silent omissions.
// ---------------------------------------------------------------------------
struct BoundReport {
    double t = 0.0;
    double c = 0.0;  // thm1 parameter; derived as q/2A when only q was given
    double q = 0.0;  // tail level; derived as 2Ac when only c was given
    double h = 0.0;
    double g_quarter = 0.0;  // g_c(1/4)
    double condition = 0.0;  // t nu_bar(h)
    double e_term = 0.0;
    std::optional<double> median_standard;
    std::optional<double> median_refined;
    double A = 0.0;        // +inf when uncertifiable
    double K_const = 0.0;  // +inf when the tail moment diverges
    std::optional<double> thm2_threshold;
    std::optional<double> thm3_threshold;
    std::optional<double> x0;
    std::optional<double> x0_lower;  // x0/4
    std::optional<double> x0_upper;  // (17/8) x0, improved to (5/4) x0 when symmetric
    std::string notes;
};

/// Evaluate every bound at one (t, c or q). Exactly one of c/q must be given;
/// the other is derived through c = q/2A when A is finite.
BoundReport bound_report(const ScaleFunctions& sf, double t, std::optional<double> c,
                         std::optional<double> q);

}  // namespace levyconc
