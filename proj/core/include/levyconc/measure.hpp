#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "levyconc/quadrature.hpp"

namespace levyconc {

// ---------------------------------------------------------------------------
// Radial profiles. The full radial measure is
//     Lambda(dr) = total_weight() * profile(dr),
// where total_weight is w_- + w_+ in one dimension and the total spherical
// mass sigma(S^{d-1}) otherwise. Constructors of the family structs arrange
// their parameters so this convention holds (e.g. a symmetric 1-D stable
// density K/|x|^{1+alpha} has w_- = w_+ = K and profile r^{-1-alpha}).
// ---------------------------------------------------------------------------

struct StableRadial {
    double alpha;  // in (0,2); profile density r^{-1-alpha} on (0,inf)
};

struct TruncatedRadial {
    double alpha;
    double cutoff;  // profile density r^{-1-alpha} 1_{r <= cutoff}
};

struct AtomicRadial {
    std::vector<double> radii;  // ascending, > 0
    std::vector<double> rates;  // per-unit-weight rates
};

struct NumericRadial {
    std::function<double(double)> density;  // > 0 on (0, r_max)
    double r_max;                           // finite or +inf
};

using RadialPart = std::variant<StableRadial, TruncatedRadial, AtomicRadial, NumericRadial>;

struct LevyMeasure {
    int dimension = 1;
    std::vector<double> drift;    // length == dimension
    double weight_neg = 1.0;      // d == 1 half-line weights
    double weight_pos = 1.0;
    double spherical_mass = 1.0;  // d >= 2 total spherical measure
    RadialPart radial = StableRadial{1.0};
    std::string tag;  // free-form descriptor used in reports

    double total_weight() const {
        return dimension == 1 ? weight_neg + weight_pos : spherical_mass;
    }
    /// (w_+ - w_-)/(w_+ + w_-) in 1-D; 0 for the spherically symmetric case.
    double asymmetry() const {
        return dimension == 1 ? (weight_pos - weight_neg) / (weight_neg + weight_pos) : 0.0;
    }
    bool symmetric() const { return asymmetry() == 0.0; }
    bool zero_drift() const;

    /// Throws Error unless the structural invariants hold (drift length,
    /// positive weights, alpha range, ascending atoms, ...).
    void validate() const;
};

struct LogGrid {
    double lo = 0.0;  // <= 0 means "relative to the measure's characteristic scale"
    double hi = 0.0;
    int points = 400;

    std::vector<double> make(double scale) const;
};

// ---------------------------------------------------------------------------
// ScaleFunctions: cached evaluators for the radial functionals
//     V(R)      = int_{r<=R} r^2 Lambda(dr)
//     nu_bar(R) = Lambda((R, inf))
//     M(R)      = int_{r>R} r Lambda(dr)   (+inf when the tail moment diverges)
// Closed forms are used for the closed-form radial profiles; the numeric
// profile goes through adaptive quadrature against a prefilled log-grid memo.
// Immutable after construction; safe for concurrent reads.
// ---------------------------------------------------------------------------
class ScaleFunctions {
public:
    explicit ScaleFunctions(LevyMeasure measure, QuadConfig quad = {}, LogGrid grid = {});

    const LevyMeasure& measure() const { return measure_; }
    const QuadConfig& quad_config() const { return quad_; }

    double V(double R) const;
    double M(double R) const;
    double nu_bar(double R) const;

    /// lim_{R->inf} V(R); +inf when the second moment of Lambda diverges.
    double V_total() const { return v_total_; }

    /// int_{a < r <= b} r Lambda(dr), 0 for a >= b. Radial only; callers apply
    /// the direction factor (asymmetry in 1-D, 0 in higher dimension).
    double shell_first_moment(double a, double b) const;

    /// A typical jump length used to anchor default grids: the truncation
    /// radius, the largest atom, or 1 for scale-free profiles.
    double characteristic_scale() const { return scale_; }

    /// Radii where V or nu_bar may kink or jump (atoms, cutoffs).
    std::span<const double> breakpoints() const { return breakpoints_; }

    /// The default certification grid (ascending radii).
    std::span<const double> default_grid() const { return grid_radii_; }

private:
    double V_numeric(double R) const;
    double M_numeric(double R) const;
    double nu_bar_numeric(double R) const;

    LevyMeasure measure_;
    QuadConfig quad_;
    double scale_ = 1.0;
    double v_total_ = 0.0;
    std::vector<double> breakpoints_;
    std::vector<double> grid_radii_;
    // memo tables (numeric profile only): cumulative values at grid_radii_
    std::vector<double> memo_V_;
    std::vector<double> memo_nu_;
    std::vector<double> memo_M_;  // empty when the tail moment diverges
    bool tail_moment_finite_ = true;
};

/// Smallest grid-certified constant A with nu_bar(R) <= A V(R)/R^2 on the
/// grid, improved to the exact R->0 / R->inf limits for the closed-form
/// power-law profiles. +inf when V vanishes while nu_bar does not.
double A_constant(const ScaleFunctions& sf, const LogGrid& grid = {});

/// Same for M(R) <= K V(R)/R. +inf when the tail moment diverges or V
/// vanishes on part of the support.
double K_constant(const ScaleFunctions& sf, const LogGrid& grid = {});

/// E Y^{(R)}_t coordinate-wise, for the process with the measure truncated at
/// R (small-jump part of the decomposition at level R).
std::vector<double> truncated_mean(const ScaleFunctions& sf, double R, double t);

}  // namespace levyconc
