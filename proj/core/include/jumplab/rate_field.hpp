#pragma once

#include <string>
#include <vector>

#include "jumplab/grid.hpp"

namespace jumplab {

/// Analytic description of a jump-intensity profile, instantiable on any grid.
/// All presets are normalized so that the integral of V over (0,1) is exactly 1.
struct RatePreset {
    enum class Kind { constant, linear, polynomial, degenerate };

    Kind kind = Kind::constant;
    double slope = 0.0;                 // linear: V(x) = 1 + slope*(x - 1/2), |slope| < 2
    std::vector<double> coeffs;         // polynomial: sum c_j x^j before normalization

    static RatePreset constant() { return {}; }
    static RatePreset linear(double slope);
    static RatePreset polynomial(std::vector<double> coeffs);
    /// V(x) = 6x(1-x); vanishes at both endpoints.
    static RatePreset degenerate();

    /// Normalized polynomial coefficients (ascending powers) for this preset.
    std::vector<double> normalized_coeffs() const;

    /// Exact pointwise evaluation of the normalized profile.
    double eval(double x) const;

    bool symmetric() const;
    std::string name() const;
};

/// Jump intensity sampled on a grid, with analytic endpoint data.
struct RateField {
    std::vector<double> values;   // V(x_i) on interior nodes
    double v_left = 0.0, v_right = 0.0;
    double d1_left = 0.0, d1_right = 0.0;   // V'
    double d2_left = 0.0, d2_right = 0.0;   // V''
    double min_v = 0.0, max_v = 0.0;        // bounds over the closed interval
    bool degenerate_ok = false;             // endpoint zeros allowed

    /// Piecewise-linear evaluation between nodes (boundary values included).
    double value_at(double x, const Grid& grid) const;

    double value(int full_index) const {
        if (full_index == 0) return v_left;
        if (full_index == static_cast<int>(values.size()) + 1) return v_right;
        return values[static_cast<size_t>(full_index) - 1];
    }
};

/// Sample a preset on a grid, enforcing positivity and normalization.
/// Throws InvalidRate on violation.
RateField build_rate_field(const RatePreset& preset, const Grid& grid);

/// Build from tabulated interior samples plus endpoint values. Endpoint
/// derivatives come from one-sided fourth-order differences; the trapezoid
/// mass must equal 1 within 1e-8.
RateField build_rate_field_from_samples(std::vector<double> values, double v_left,
                                        double v_right, const Grid& grid,
                                        bool degenerate_ok = false);

/// Mirror image under x -> 1-x (array reversal plus endpoint swaps).
RateField reflect(const RateField& field);

}  // namespace jumplab
