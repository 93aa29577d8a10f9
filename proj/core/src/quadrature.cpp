#include "levyconc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace levyconc {

namespace {

constexpr double kPi = 3.14159265358979323846;

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

double gk_segment(const std::function<double(double)>& f, double a, double b, double tol,
                  double* err_out) {
    double err = 0.0;
    const double v = GK::integrate(f, a, b, 12, tol, &err);
    if (err_out) *err_out = err;
    return v;
}

}  // namespace

QuadOutcome integrate_segment(const std::function<double(double)>& f, double a, double b,
                              const QuadConfig& cfg) {
    QuadOutcome out;
    if (!(b > a)) return out;
    out.value = gk_segment(f, a, b, cfg.rel_tol, &out.abs_error);
    out.converged =
        out.abs_error <= std::max(cfg.abs_floor, cfg.rel_tol * std::abs(out.value)) * 16.0;
    return out;
}

QuadOutcome integrate_radial(const std::function<double(double)>& f, double a, double b,
                             std::span<const double> breakpoints, const QuadConfig& cfg) {
    QuadOutcome out;
    if (!(b > a) || a < 0.0) return out;

    // g(u) = f(e^u) e^u, so that \int f dr = \int g du.
    auto g = [&f](double u) {
        const double r = std::exp(u);
        return f(r) * r;
    };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> edges;  // u-space block edges, ascending
    const double u_hi = (b == inf) ? 0.0 : std::log(b);
    const double u_lo_known = (a == 0.0) ? 0.0 : std::log(a);

    // Fixed block seams at integers of u shifted to land on breakpoints.
    auto add_edges = [&](double lo, double hi) {
        edges.push_back(lo);
        for (double u = std::ceil(lo) ; u < hi; u += 1.0)
            if (u > lo) edges.push_back(u);
        edges.push_back(hi);
    };

    std::vector<double> cuts;
    if (a > 0.0) cuts.push_back(u_lo_known);
    for (double bp : breakpoints)
        if (bp > a && (b == inf || bp < b) && bp > 0.0) cuts.push_back(std::log(bp));
    if (b != inf) cuts.push_back(u_hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double acc = 0.0, err = 0.0;

    auto accumulate = [&](double lo, double hi) {
        edges.clear();
        add_edges(lo, hi);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            double e = 0.0;
            acc += gk_segment(g, edges[i], edges[i + 1], cfg.rel_tol, &e);
            err += e;
        }
    };

    // Middle part between the known cuts.
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) accumulate(cuts[i], cuts[i + 1]);

    auto negligible = [&](double block) {
        return std::abs(block) <= std::max(cfg.abs_floor, cfg.rel_tol * std::abs(acc));
    };

    // Walk toward 0 when the lower end is open.
    if (a == 0.0) {
        double hi = cuts.empty() ? u_hi : cuts.front();
        if (cuts.empty() && b == inf) hi = 0.0;
        int quiet = 0;
        for (int k = 0; k < cfg.max_blocks && quiet < 3; ++k) {
            double e = 0.0;
            const double block = gk_segment(g, hi - 1.0, hi, cfg.rel_tol, &e);
            acc += block;
            err += e;
            quiet = negligible(block) ? quiet + 1 : 0;
            hi -= 1.0;
        }
        if (quiet < 3) {
            out.converged = false;  // never settled; caller decides
        }
    }

    // Walk toward infinity when the upper end is open.
    if (b == inf) {
        double lo = cuts.empty() ? 0.0 : cuts.back();
        int quiet = 0;
        double prev = inf;
        int growing = 0;
        for (int k = 0; k < cfg.max_blocks && quiet < 3; ++k) {
            double e = 0.0;
            const double block = gk_segment(g, lo, lo + 1.0, cfg.rel_tol, &e);
            acc += block;
            err += e;
            quiet = negligible(block) ? quiet + 1 : 0;
            growing = (std::abs(block) >= std::abs(prev) * (1.0 - 1e-9) && !negligible(block))
                          ? growing + 1
                          : 0;
            if (growing >= 30) {  // blocks stopped shrinking: divergent tail
                out.diverging = true;
                out.converged = false;
                out.value = inf;
                return out;
            }
            prev = block;
            lo += 1.0;
        }
        if (quiet < 3) out.converged = false;
    }

    out.value = acc;
    out.abs_error = err;
    if (err > std::max(cfg.abs_floor, 100.0 * cfg.rel_tol * std::abs(acc)) && std::abs(acc) > 0.0)
        out.converged = false;
    return out;
}

double sin_power_integral(double alpha) {
    // First half-period carries the v^{-alpha} endpoint singularity.
    boost::math::quadrature::tanh_sinh<double> ts;
    auto head_f = [alpha](double v) { return std::sin(v) * std::pow(v, -alpha); };
    double head = ts.integrate(head_f, 0.0, kPi);

    // Remaining half-periods alternate in sign with slowly decaying magnitude;
    // iterated averaging of the partial sums (Euler transform) accelerates.
    constexpr int kTerms = 72;
    std::vector<double> partial(kTerms);
    double acc = 0.0;
    for (int k = 1; k <= kTerms; ++k) {
        double e = 0.0;
        acc += gk_segment(head_f, k * kPi, (k + 1) * kPi, 1e-13, &e);
        partial[static_cast<std::size_t>(k - 1)] = acc;
    }
    int m = kTerms;
    while (m > 1) {
        for (int i = 0; i + 1 < m; ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
        --m;
    }
    return head + partial[0];
}

double compensated_sine_integral(double alpha, double u) {
    // Over (0,1]: sin(ur) - ur ~ -(ur)^3/6 kills the r^{-1-alpha} singularity.
    boost::math::quadrature::tanh_sinh<double> ts;
    auto head_f = [alpha, u](double r) {
        const double x = u * r;
        const double s = (std::abs(x) < 1e-4)
                             ? -x * x * x / 6.0 * (1.0 - x * x / 20.0)
                             : std::sin(x) - x;
        return s * std::pow(r, -1.0 - alpha);
    };
    double head = ts.integrate(head_f, 0.0, 1.0);

    // Over (1, inf): plain sin(ur) r^{-1-alpha}; substitute v = u r and sum
    // half-periods of sin(v) v^{-1-alpha}, scaled by u^alpha, starting at v=u.
    auto osc = [alpha](double v) { return std::sin(v) * std::pow(v, -1.0 - alpha); };
    const double start = u;
    const double first_edge = std::ceil(start / kPi) * kPi;
    double e = 0.0;
    double tail = gk_segment(osc, start, first_edge, 1e-13, &e);
    constexpr int kTerms = 72;
    std::vector<double> partial(kTerms);
    double acc = 0.0;
    for (int k = 0; k < kTerms; ++k) {
        const double lo = first_edge + k * kPi;
        acc += gk_segment(osc, lo, lo + kPi, 1e-13, &e);
        partial[static_cast<std::size_t>(k)] = acc;
    }
    int m = kTerms;
    while (m > 1) {
        for (int i = 0; i + 1 < m; ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
        --m;
    }
    tail += partial[0];
    return head + std::pow(u, alpha) * tail;
}

}  // namespace levyconc
