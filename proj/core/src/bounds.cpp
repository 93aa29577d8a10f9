#include "levyconc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "levyconc/errors.hpp"

namespace levyconc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// y - (y+c) log(1+y/c), strictly decreasing in y >= 0 from 0 to -inf.
double bennett_exponent(double c, double y) { return y - (y + c) * std::log1p(y / c); }

}  // namespace

double bennett_inverse(double c, double x) {
    if (!(c > 0.0)) throw Error("bennett_inverse: c must be positive");
    if (!(x > 0.0 && x <= 1.0)) throw Error("bennett_inverse: x must lie in (0,1]");
    if (x == 1.0) return 0.0;

    const double target = std::log(x);
    double hi = std::max(c, 1.0);
    while (bennett_exponent(c, hi) > target) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (bennett_exponent(c, mid) > target ? lo : hi) = mid;
    }
    double y = 0.5 * (lo + hi);
    // Newton polish; the derivative -log(1+y/c) is nonzero at the root (x < 1).
    for (int i = 0; i < 3; ++i) {
        const double d = -std::log1p(y / c);
        const double step = (bennett_exponent(c, y) - target) / d;
        const double next = y - step;
        if (next > lo && next < hi) y = next;
    }
    return y;
}

namespace {

// Leftmost residual-certified root of ratio(x) = level on (0, inf).
// `ratio` must be continuous between the measure's breakpoints; jumps are
// allowed at breakpoints and are skipped when bisection converges onto one
// without the residual certificate holding.
double leftmost_level_crossing(const ScaleFunctions& sf, const std::function<double(double)>& ratio,
                               double level, bool can_expand_down, const char* who) {
    std::vector<double> xs(sf.default_grid().begin(), sf.default_grid().end());
    xs.insert(xs.end(), sf.breakpoints().begin(), sf.breakpoints().end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    // Expand the bracket downward while the ratio still sits below the level
    // (huge levels are reached only very close to 0) and upward while it sits
    // above (small levels are reached far out).
    if (can_expand_down) {
        double r = xs.front();
        while (r > 1e-280 && sf.V(r) > 0.0 && ratio(r) < level) {
            r /= 16.0;
            xs.insert(xs.begin(), r);
        }
    }
    {
        double r = xs.back();
        while (r < 1e280 && ratio(r) > level) {
            r *= 16.0;
            xs.push_back(r);
        }
    }

    const double rel_cert = 1e-9;
    double sup_seen = 0.0;
    double f_lo = ratio(xs.front()) - level;
    sup_seen = std::max(sup_seen, f_lo + level);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double f_hi = ratio(xs[i + 1]) - level;
        sup_seen = std::max(sup_seen, f_hi + level);
        const bool straddles = (f_lo >= 0.0 && f_hi <= 0.0) || (f_lo <= 0.0 && f_hi >= 0.0);
        if (straddles && (f_lo != 0.0 || f_hi != 0.0)) {
            double lo = xs[i], hi = xs[i + 1];
            double g_lo = f_lo;
            for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double g_mid = ratio(mid) - level;
                if ((g_lo <= 0.0) == (g_mid <= 0.0)) {
                    lo = mid;
                    g_lo = g_mid;
                } else {
                    hi = mid;
                }
            }
            const double x = 0.5 * (lo + hi);
            if (std::abs(ratio(x) / level - 1.0) <= rel_cert) return x;
            // sign change without a root: a jump of the ratio; keep scanning
        } else if (f_lo == 0.0 && std::abs(ratio(xs[i]) / level - 1.0) <= rel_cert) {
            return xs[i];
        }
        f_lo = f_hi;
    }
    throw LevelNeverAttained(std::string(who) + ": level never attained", level, sup_seen);
}

}  // namespace

double h_scale(const ScaleFunctions& sf, double c, double t) {
    if (!(c > 0.0 && t > 0.0)) throw Error("h_scale: c and t must be positive");
    auto ratio = [&sf](double x) { return sf.V(x) / (x * x); };
    return leftmost_level_crossing(sf, ratio, c / t, true, "h_scale");
}

double x0_scale(const ScaleFunctions& sf, double t) {
    if (!(t > 0.0)) throw Error("x0_scale: t must be positive");
    if (std::isinf(sf.M(sf.characteristic_scale())))
        throw InfiniteMean("x0_scale: tail first moment diverges");
    auto ratio = [&sf](double x) { return sf.V(x) / (x * x) + sf.M(x) / x; };
    return leftmost_level_crossing(sf, ratio, 1.0 / t, true, "x0_scale");
}

namespace {

double drift_term_at(const ScaleFunctions& sf, double h, double t) {
    const auto& m = sf.measure();
    double norm2 = 0.0;
    if (m.dimension == 1) {
        double v = m.drift.empty() ? 0.0 : m.drift[0];
        const double s = m.asymmetry();
        if (s != 0.0) {
            if (h < 1.0)
                v -= s * sf.shell_first_moment(h, 1.0);
            else if (h > 1.0)
                v += s * sf.shell_first_moment(1.0, h);
        }
        norm2 = v * v;
    } else {
        // spherically symmetric: the shell integrals vanish coordinate-wise
        for (double b : m.drift) norm2 += b * b;
    }
    return t * std::sqrt(norm2);
}

}  // namespace

double drift_term(const ScaleFunctions& sf, double c, double t) {
    return drift_term_at(sf, h_scale(sf, c, t), t);
}

MedianBoundResult median_bound(const ScaleFunctions& sf, double c, double t) {
    MedianBoundResult out;
    out.h = h_scale(sf, c, t);
    out.condition = t * sf.nu_bar(out.h);
    if (out.condition >= 0.5)
        throw ConditionViolated("median_bound: t nu_bar(h_c(t)) must be < 1/2", out.condition,
                                0.5);
    out.e_term = drift_term_at(sf, out.h, t);
    const double g_quarter = bennett_inverse(c, 0.25);
    // 1e-9 relative tolerance absorbs root-finder noise when the condition
    // sits exactly on the 1/4 boundary (pure stable with c = 1/4A).
    out.standard_valid = out.condition <= 0.25 * (1.0 + 1e-9);
    if (out.standard_valid) out.standard = out.h * (1.0 + 3.0 * g_quarter) + out.e_term;
    out.refined =
        out.h * (1.0 + g_quarter + 2.0 * bennett_inverse(c, 0.5 - out.condition)) + out.e_term;
    return out;
}

namespace {

void require_tail_variance_inequality(const ScaleFunctions& sf, double R, double A,
                                      const char* who) {
    const double lhs = sf.nu_bar(R) * R * R;
    const double rhs = A * sf.V(R);
    if (lhs > rhs * (1.0 + 1e-9) + 1e-12)
        throw ConditionViolated(std::string(who) + ": nu_bar(R) R^2 <= A V(R) fails at R", lhs,
                                rhs);
}

}  // namespace

double median_tail_bound(const ScaleFunctions& sf, double c, double t, double x, double x_prime,
                         double A) {
    if (!(x_prime > 0.0 && x > x_prime)) throw Error("median_tail_bound: need 0 < x' < x");
    if (!std::isfinite(A)) throw Error("median_tail_bound: A must be finite");
    const double h = h_scale(sf, c, t);
    const double nb = sf.nu_bar(h);
    if (!(nb > 0.0)) throw Error("median_tail_bound: nu_bar(h_c(t)) = 0");
    require_tail_variance_inequality(sf, h, A, "median_tail_bound");
    const double u = (x - x_prime) / h;
    return A * c * sf.nu_bar(x_prime) / nb + std::exp(bennett_exponent(c, u));
}

double median_tail_threshold(const ScaleFunctions& sf, double q, double t, double A) {
    if (!(q > 0.0 && q < 1.0)) throw Error("median_tail_threshold: q must lie in (0,1)");
    if (!std::isfinite(A)) throw Error("median_tail_threshold: A must be finite");
    const double c = q / (2.0 * A);
    const double h = h_scale(sf, c, t);
    require_tail_variance_inequality(sf, h, A, "median_tail_threshold");
    return (1.0 + bennett_inverse(c, 0.5 * q)) * h;
}

double mean_tail_bound(double b, double c, double A) {
    if (!(b > 0.0 && c > 0.0)) throw Error("mean_tail_bound: b and c must be positive");
    if (!std::isfinite(A)) throw Error("mean_tail_bound: A must be finite");
    return A * c + std::exp(bennett_exponent(c, b));
}

double mean_tail_threshold(const ScaleFunctions& sf, double q, double t, double A,
                           double K_const) {
    if (!(q > 0.0 && q < 1.0)) throw Error("mean_tail_threshold: q must lie in (0,1)");
    if (!std::isfinite(A)) throw Error("mean_tail_threshold: A must be finite");
    if (std::isinf(K_const)) throw InfiniteMean("mean_tail_threshold: K constant is infinite");
    const double c = q / (2.0 * A);
    const double h = h_scale(sf, c, t);
    require_tail_variance_inequality(sf, h, A, "mean_tail_threshold");
    return (q * K_const / (2.0 * A) + bennett_inverse(c, 0.5 * q)) * h;
}

double truncation_profile(const ScaleFunctions& sf, double R, double t, double x) {
    if (!(R > 0.0 && t > 0.0)) throw Error("truncation_profile: R and t must be positive");
    if (x < 0.0) throw Error("truncation_profile: x must be nonnegative");
    const double v = sf.V(R);
    if (!(v > 0.0)) throw Error("truncation_profile: V(R) must be positive");
    const double gamma = t * v / (R * R);
    return std::exp(bennett_exponent(gamma, x / (2.0 * R)));
}

double truncation_profile_inverse(const ScaleFunctions& sf, double R, double t, double y) {
    if (!(R > 0.0 && t > 0.0)) throw Error("truncation_profile_inverse: R and t must be positive");
    const double v = sf.V(R);
    if (!(v > 0.0)) throw Error("truncation_profile_inverse: V(R) must be positive");
    return 2.0 * R * bennett_inverse(t * v / (R * R), y);
}

BoundReport bound_report(const ScaleFunctions& sf, double t, std::optional<double> c,
                         std::optional<double> q) {
    if (c.has_value() == q.has_value())
        throw ConfigError("bound_report: exactly one of c/q must be supplied");
    BoundReport r;
    r.t = t;
    r.A = A_constant(sf);
    r.K_const = K_constant(sf);

    if (c) {
        r.c = *c;
        r.q = std::isfinite(r.A) ? 2.0 * r.A * r.c : std::numeric_limits<double>::quiet_NaN();
    } else {
        r.q = *q;
        if (!std::isfinite(r.A))
            throw ConditionViolated("bound_report: q given but A is not finite", r.A, kInf);
        r.c = r.q / (2.0 * r.A);
    }

    r.g_quarter = bennett_inverse(r.c, 0.25);
    try {
        const auto mb = median_bound(sf, r.c, t);
        r.h = mb.h;
        r.condition = mb.condition;
        r.e_term = mb.e_term;
        if (mb.standard_valid) r.median_standard = mb.standard;
        r.median_refined = mb.refined;
        if (!mb.standard_valid) r.notes += "condition(3) fails: t nu_bar(h) > 1/4; ";
    } catch (const ConditionViolated& e) {
        r.h = h_scale(sf, r.c, t);
        r.condition = e.observed;
        r.e_term = drift_term_at(sf, r.h, t);
        r.notes += "median bound invalid: t nu_bar(h) >= 1/2; ";
    }

    if (std::isfinite(r.A) && r.q > 0.0 && r.q < 1.0) {
        r.thm2_threshold = median_tail_threshold(sf, r.q, t, r.A);
        if (std::isfinite(r.K_const))
            r.thm3_threshold = mean_tail_threshold(sf, r.q, t, r.A, r.K_const);
        else
            r.notes += "K constant infinite: no mean-tail threshold; ";
    } else {
        r.notes += std::isfinite(r.A) ? "q outside (0,1): no tail thresholds; "
                                      : "A constant infinite: no tail thresholds; ";
    }

    try {
        const double x0 = x0_scale(sf, t);
        r.x0 = x0;
        r.x0_lower = 0.25 * x0;
        r.x0_upper = (sf.measure().symmetric() && sf.measure().zero_drift() ? 1.25 : 17.0 / 8.0) * x0;
    } catch (const InfiniteMean&) {
        r.notes += "tail moment diverges: no x0; ";
    } catch (const LevelNeverAttained&) {
        r.notes += "x0 level never attained; ";
    }
    return r;
}

}  // namespace levyconc
