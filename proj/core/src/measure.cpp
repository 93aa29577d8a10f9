#include "levyconc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levyconc/errors.hpp"

namespace levyconc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overload : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

// int_a^b r^{-alpha} dr (the first-moment integrand of a power-law profile)
double power_shell(double alpha, double a, double b) {
    if (!(b > a)) return 0.0;
    if (alpha == 1.0) return std::log(b / a);
    return (std::pow(b, 1.0 - alpha) - std::pow(a, 1.0 - alpha)) / (1.0 - alpha);
}

}  // namespace

bool LevyMeasure::zero_drift() const {
    return std::all_of(drift.begin(), drift.end(), [](double b) { return b == 0.0; });
}

void LevyMeasure::validate() const {
    if (dimension < 1) throw Error("measure: dimension must be >= 1");
    if (!drift.empty() && drift.size() != static_cast<std::size_t>(dimension))
        throw Error("measure: drift length does not match dimension");
    if (dimension == 1) {
        if (weight_neg < 0.0 || weight_pos < 0.0 || weight_neg + weight_pos <= 0.0)
            throw Error("measure: half-line weights must be nonnegative with positive sum");
    } else if (spherical_mass <= 0.0) {
        throw Error("measure: spherical mass must be positive");
    }
    std::visit(Overload{
                   [](const StableRadial& s) {
                       if (!(s.alpha > 0.0 && s.alpha < 2.0))
                           throw Error("measure: stable index must lie in (0,2)");
                   },
                   [](const TruncatedRadial& s) {
                       if (!(s.alpha > 0.0 && s.alpha < 2.0))
                           throw Error("measure: stable index must lie in (0,2)");
                       if (!(s.cutoff > 0.0)) throw Error("measure: truncation radius must be positive");
                   },
                   [](const AtomicRadial& a) {
                       if (a.radii.empty() || a.radii.size() != a.rates.size())
                           throw Error("measure: atoms need matching radii and rates");
                       double prev = 0.0;
                       for (std::size_t i = 0; i < a.radii.size(); ++i) {
                           if (!(a.radii[i] > prev)) throw Error("measure: atom radii must be ascending and positive");
                           if (!(a.rates[i] > 0.0)) throw Error("measure: atom rates must be positive");
                           prev = a.radii[i];
                       }
                   },
                   [](const NumericRadial& n) {
                       if (!n.density) throw Error("measure: numeric radial density is empty");
                       if (!(n.r_max > 0.0)) throw Error("measure: r_max must be positive");
                   },
               },
               radial);
}

std::vector<double> LogGrid::make(double scale) const {
    const double lo_eff = lo > 0.0 ? lo : 1e-8 * scale;
    const double hi_eff = hi > 0.0 ? hi : 1e8 * scale;
    if (!(hi_eff > lo_eff) || points < 2) throw Error("log grid: invalid bounds or point count");
    std::vector<double> out(static_cast<std::size_t>(points));
    const double llo = std::log(lo_eff), lhi = std::log(hi_eff);
    for (int i = 0; i < points; ++i)
        out[static_cast<std::size_t>(i)] =
            std::exp(llo + (lhi - llo) * static_cast<double>(i) / (points - 1));
    return out;
}

ScaleFunctions::ScaleFunctions(LevyMeasure measure, QuadConfig quad, LogGrid grid)
    : measure_(std::move(measure)), quad_(quad) {
    measure_.validate();

    scale_ = std::visit(Overload{
                            [](const StableRadial&) { return 1.0; },
                            [](const TruncatedRadial& t) { return t.cutoff; },
                            [](const AtomicRadial& a) { return a.radii.back(); },
                            [](const NumericRadial& n) {
                                return std::isfinite(n.r_max) ? n.r_max : 1.0;
                            },
                        },
                        measure_.radial);

    std::visit(Overload{
                   [&](const StableRadial&) {},
                   [&](const TruncatedRadial& t) { breakpoints_.push_back(t.cutoff); },
                   [&](const AtomicRadial& a) { breakpoints_ = a.radii; },
                   [&](const NumericRadial& n) {
                       if (std::isfinite(n.r_max)) breakpoints_.push_back(n.r_max);
                   },
               },
               measure_.radial);

    grid_radii_ = grid.make(scale_);

    if (const auto* num = std::get_if<NumericRadial>(&measure_.radial)) {
        // Prefill cumulative memo tables so later lookups only integrate one cell.
        const double W = measure_.total_weight();
        auto lam = [&](double r) { return W * num->density(r); };
        auto lam_r = [&](double r) { return W * num->density(r) * r; };
        auto lam_r2 = [&](double r) { return W * num->density(r) * r * r; };
        const std::size_t n = grid_radii_.size();
        const double top = std::min(num->r_max, kInf);

        auto cell = [&](const std::function<double(double)>& f, double a, double b) {
            if (a >= top || !(b > a)) return 0.0;
            auto res = integrate_radial(f, a, std::min(b, top), breakpoints_, quad_);
            if (!res.converged && !res.diverging)
                throw QuadratureError("scale functions: memo cell did not converge", res.value);
            return res.value;
        };

        memo_V_.assign(n, 0.0);
        memo_V_[0] = cell(lam_r2, 0.0, grid_radii_[0]);
        for (std::size_t i = 1; i < n; ++i)
            memo_V_[i] = memo_V_[i - 1] + cell(lam_r2, grid_radii_[i - 1], grid_radii_[i]);

        auto tail_of = [&](const std::function<double(double)>& f, bool* finite) {
            *finite = true;
            if (grid_radii_.back() >= top) return 0.0;
            auto res = integrate_radial(f, grid_radii_.back(), num->r_max, breakpoints_, quad_);
            if (res.diverging) {
                *finite = false;
                return kInf;
            }
            if (!res.converged)
                throw QuadratureError("scale functions: tail integral did not converge", res.value);
            return res.value;
        };

        bool fin = true;
        memo_nu_.assign(n, 0.0);
        memo_nu_[n - 1] = tail_of(lam, &fin);
        if (!fin) throw Error("measure: tail mass nu_bar is not finite");
        for (std::size_t i = n - 1; i-- > 0;)
            memo_nu_[i] = memo_nu_[i + 1] + cell(lam, grid_radii_[i], grid_radii_[i + 1]);

        memo_M_.assign(n, 0.0);
        memo_M_[n - 1] = tail_of(lam_r, &tail_moment_finite_);
        if (tail_moment_finite_) {
            for (std::size_t i = n - 1; i-- > 0;)
                memo_M_[i] = memo_M_[i + 1] + cell(lam_r, grid_radii_[i], grid_radii_[i + 1]);
        } else {
            memo_M_.clear();
        }

        bool v_fin = true;
        const double v_tail = tail_of(lam_r2, &v_fin);
        v_total_ = v_fin ? memo_V_.back() + v_tail : kInf;
    } else {
        v_total_ = std::visit(
            Overload{
                [&](const StableRadial&) { return kInf; },
                [&](const TruncatedRadial& t) {
                    return measure_.total_weight() * std::pow(t.cutoff, 2.0 - t.alpha) /
                           (2.0 - t.alpha);
                },
                [&](const AtomicRadial& a) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < a.radii.size(); ++i)
                        s += a.radii[i] * a.radii[i] * a.rates[i];
                    return measure_.total_weight() * s;
                },
                [](const NumericRadial&) { return 0.0; },  // unreachable
            },
            measure_.radial);
    }

    // Integrability and no-atom-at-origin hygiene: V and nu_bar finite at the
    // characteristic scale, V nonincreasing down a decreasing radius grid.
    const double v_ref = V(scale_);
    if (!std::isfinite(v_ref)) throw Error("measure: V is not finite at the characteristic scale");
    if (!std::isfinite(nu_bar(scale_)))
        throw Error("measure: nu_bar is not finite at the characteristic scale");
    double prev = v_ref;
    for (int k = 1; k <= 6; ++k) {
        const double v = V(scale_ * std::pow(10.0, -2.0 * k));
        if (v > prev * (1.0 + 1e-9) + quad_.abs_floor)
            throw Error("measure: V fails to decrease toward the origin");
        prev = v;
    }
}

double ScaleFunctions::V(double R) const {
    if (!(R > 0.0)) throw Error("V: radius must be positive");
    const double W = measure_.total_weight();
    return std::visit(
        Overload{
            [&](const StableRadial& s) {
                return W * std::pow(R, 2.0 - s.alpha) / (2.0 - s.alpha);
            },
            [&](const TruncatedRadial& s) {
                return W * std::pow(std::min(R, s.cutoff), 2.0 - s.alpha) / (2.0 - s.alpha);
            },
            [&](const AtomicRadial& a) {
                double acc = 0.0;
                for (std::size_t i = 0; i < a.radii.size() && a.radii[i] <= R; ++i)
                    acc += a.radii[i] * a.radii[i] * a.rates[i];
                return W * acc;
            },
            [&](const NumericRadial&) { return V_numeric(R); },
        },
        measure_.radial);
}

double ScaleFunctions::nu_bar(double R) const {
    if (!(R > 0.0)) throw Error("nu_bar: radius must be positive");
    const double W = measure_.total_weight();
    return std::visit(
        Overload{
            [&](const StableRadial& s) { return W * std::pow(R, -s.alpha) / s.alpha; },
            [&](const TruncatedRadial& s) {
                if (R >= s.cutoff) return 0.0;
                return W / s.alpha * (std::pow(R, -s.alpha) - std::pow(s.cutoff, -s.alpha));
            },
            [&](const AtomicRadial& a) {
                double acc = 0.0;
                for (std::size_t i = a.radii.size(); i-- > 0 && a.radii[i] > R;)
                    acc += a.rates[i];
                return W * acc;
            },
            [&](const NumericRadial&) { return nu_bar_numeric(R); },
        },
        measure_.radial);
}

double ScaleFunctions::M(double R) const {
    if (!(R > 0.0)) throw Error("M: radius must be positive");
    const double W = measure_.total_weight();
    return std::visit(
        Overload{
            [&](const StableRadial& s) {
                if (s.alpha <= 1.0) return kInf;
                return W * std::pow(R, 1.0 - s.alpha) / (s.alpha - 1.0);
            },
            [&](const TruncatedRadial& s) {
                if (R >= s.cutoff) return 0.0;
                return W * power_shell(s.alpha, R, s.cutoff);
            },
            [&](const AtomicRadial& a) {
                double acc = 0.0;
                for (std::size_t i = a.radii.size(); i-- > 0 && a.radii[i] > R;)
                    acc += a.radii[i] * a.rates[i];
                return W * acc;
            },
            [&](const NumericRadial&) { return M_numeric(R); },
        },
        measure_.radial);
}

double ScaleFunctions::shell_first_moment(double a, double b) const {
    if (!(b > a) || b <= 0.0) return 0.0;
    a = std::max(a, 0.0);
    const double W = measure_.total_weight();
    return std::visit(
        Overload{
            [&](const StableRadial& s) { return W * power_shell(s.alpha, std::max(a, 0.0), b); },
            [&](const TruncatedRadial& s) {
                const double top = std::min(b, s.cutoff);
                if (a >= top) return 0.0;
                return W * power_shell(s.alpha, a, top);
            },
            [&](const AtomicRadial& at) {
                double acc = 0.0;
                for (std::size_t i = 0; i < at.radii.size(); ++i)
                    if (at.radii[i] > a && at.radii[i] <= b) acc += at.radii[i] * at.rates[i];
                return W * acc;
            },
            [&](const NumericRadial& n) {
                const double top = std::min(b, n.r_max);
                if (a >= top) return 0.0;
                auto f = [&](double r) { return W * n.density(r) * r; };
                auto res = integrate_radial(f, a, top, breakpoints_, quad_);
                if (!res.converged)
                    throw QuadratureError("shell_first_moment did not converge", res.value);
                return res.value;
            },
        },
        measure_.radial);
}

// --- numeric-profile lookups: memo cell + one local integral ---------------

namespace {
// index of the largest grid radius <= R, or npos
std::size_t cell_below(std::span<const double> grid, double R) {
    auto it = std::upper_bound(grid.begin(), grid.end(), R);
    if (it == grid.begin()) return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(std::distance(grid.begin(), it)) - 1;
}
}  // namespace

double ScaleFunctions::V_numeric(double R) const {
    const auto& n = std::get<NumericRadial>(measure_.radial);
    const double W = measure_.total_weight();
    auto f = [&](double r) { return W * n.density(r) * r * r; };
    const double top = std::min(R, n.r_max);
    const std::size_t i = cell_below(grid_radii_, top);
    double base = 0.0, lo = 0.0;
    if (i != static_cast<std::size_t>(-1)) {
        base = memo_V_[i];
        lo = grid_radii_[i];
    }
    if (top <= lo) return base;
    auto res = integrate_radial(f, lo, top, breakpoints_, quad_);
    if (!res.converged) throw QuadratureError("V: quadrature did not converge", base + res.value);
    return base + res.value;
}

double ScaleFunctions::nu_bar_numeric(double R) const {
    const auto& n = std::get<NumericRadial>(measure_.radial);
    const double W = measure_.total_weight();
    if (R >= n.r_max) return 0.0;
    auto f = [&](double r) { return W * n.density(r); };
    // smallest grid radius >= R carries the memoized tail
    auto it = std::lower_bound(grid_radii_.begin(), grid_radii_.end(), R);
    double base = 0.0;
    double hi = n.r_max;
    if (it != grid_radii_.end()) {
        base = memo_nu_[static_cast<std::size_t>(std::distance(grid_radii_.begin(), it))];
        hi = *it;
    }
    if (hi <= R) return base;
    auto res = integrate_radial(f, R, std::min(hi, n.r_max), breakpoints_, quad_);
    if (!res.converged)
        throw QuadratureError("nu_bar: quadrature did not converge", base + res.value);
    return base + res.value;
}

double ScaleFunctions::M_numeric(double R) const {
    if (!tail_moment_finite_) return kInf;
    const auto& n = std::get<NumericRadial>(measure_.radial);
    const double W = measure_.total_weight();
    if (R >= n.r_max) return 0.0;
    auto f = [&](double r) { return W * n.density(r) * r; };
    auto it = std::lower_bound(grid_radii_.begin(), grid_radii_.end(), R);
    double base = 0.0;
    double hi = n.r_max;
    if (it != grid_radii_.end()) {
        base = memo_M_[static_cast<std::size_t>(std::distance(grid_radii_.begin(), it))];
        hi = *it;
    }
    if (hi <= R) return base;
    auto res = integrate_radial(f, R, std::min(hi, n.r_max), breakpoints_, quad_);
    if (!res.converged) throw QuadratureError("M: quadrature did not converge", base + res.value);
    return base + res.value;
}

// --- structural constants ---------------------------------------------------

namespace {

double grid_sup_ratio(const ScaleFunctions& sf, const std::vector<double>& radii,
                      bool mean_version) {
    double sup = 0.0;
    for (double R : radii) {
        const double v = sf.V(R);
        const double num = mean_version ? R * sf.M(R) : R * R * sf.nu_bar(R);
        if (num == 0.0) continue;
        if (v <= 0.0) return kInf;
        if (std::isinf(num)) return kInf;
        sup = std::max(sup, num / v);
    }
    return sup;
}

}  // namespace

double A_constant(const ScaleFunctions& sf, const LogGrid& grid) {
    const auto& m = sf.measure();
    if (std::holds_alternative<AtomicRadial>(m.radial)) return kInf;  // V = 0 below the first atom
    const auto radii = grid.make(sf.characteristic_scale());
    double sup = grid_sup_ratio(sf, radii, false);
    // Exact small-R limit for the power-law profiles: R^2 nu_bar / V -> (2-a)/a.
    if (const auto* s = std::get_if<StableRadial>(&m.radial))
        sup = std::max(sup, (2.0 - s->alpha) / s->alpha);
    if (const auto* t = std::get_if<TruncatedRadial>(&m.radial))
        sup = std::max(sup, (2.0 - t->alpha) / t->alpha);
    return sup;
}

double K_constant(const ScaleFunctions& sf, const LogGrid& grid) {
    const auto& m = sf.measure();
    if (std::holds_alternative<AtomicRadial>(m.radial)) return kInf;
    if (const auto* s = std::get_if<StableRadial>(&m.radial))
        return s->alpha > 1.0 ? (2.0 - s->alpha) / (s->alpha - 1.0) : kInf;
    if (const auto* t = std::get_if<TruncatedRadial>(&m.radial)) {
        // R M(R)/V(R) = K0 (1 - (R/M)^{a-1}) for a > 1, unbounded as R -> 0 otherwise.
        if (t->alpha <= 1.0) return kInf;
        return (2.0 - t->alpha) / (t->alpha - 1.0);
    }
    const auto radii = grid.make(sf.characteristic_scale());
    return grid_sup_ratio(sf, radii, true);
}

std::vector<double> truncated_mean(const ScaleFunctions& sf, double R, double t) {
    const auto& m = sf.measure();
    std::vector<double> out(static_cast<std::size_t>(m.dimension), 0.0);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = m.drift.empty() ? 0.0 : t * m.drift[k];
    if (m.dimension == 1 && !m.symmetric()) {
        const double s = m.asymmetry();
        if (R > 1.0)
            out[0] += t * s * sf.shell_first_moment(1.0, R);
        else if (R < 1.0)
            out[0] -= t * s * sf.shell_first_moment(R, 1.0);
    }
    return out;
}

}  // namespace levyconc
