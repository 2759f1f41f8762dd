#pragma once

#include <span>
#include <vector>

#include "jumplab/grid.hpp"
#include "jumplab/jump_measure.hpp"
#include "jumplab/scalar_field.hpp"

namespace jumplab {

/// Discrete representation of integration against a jump measure: trapezoid
/// weights on the density part (rescaled so the discrete density mass equals
/// the analytic one) plus linear-interpolation stencils for each atom.
/// Weights span all nodes 0..n+1; their sum is the total mass.
struct QuadratureRule {
    std::vector<double> weights;

    double total() const;

    /// Integral of a grid function, boundary values included.
    double integrate(const ScalarField& f) const;

    /// Integral ignoring the boundary columns (for functions vanishing there).
    double integrate_interior(std::span<const double> interior) const;

    std::span<const double> interior_weights() const {
        return std::span<const double>(weights).subspan(1, weights.size() - 2);
    }
};

QuadratureRule quadrature_weights(const JumpMeasure& measure, const Grid& grid);

}  // namespace jumplab
