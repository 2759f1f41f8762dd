#pragma once

#include <span>
#include <utility>

#include "jumplab/asymptotics.hpp"
#include "jumplab/grid.hpp"
#include "jumplab/scalar_field.hpp"

namespace jumplab {

/// Explorer for the open problem with V(x) = 6x(1-x) and mu = Lebesgue:
/// the growth exponent of lambda0(gamma) is only known to lie in [1/3, 2/3].
struct DegenerateReport {
    SweepResult sweep;
    bool slopes_in_window = false;       // all local slopes in [1/3, 2/3] +- 0.05
    bool lambda_increasing = false;
    double c1_hat = 0.0;                 // min lambda0 * gamma^{-1/3}
    double c2_hat = 0.0;                 // max lambda0 * gamma^{-2/3}
};

/// Matrix-route sweep (the fixed point assumes min V > 0), Richardson on,
/// grid resolving the gamma^{-1/3} boundary scale.
DegenerateReport degenerate_sweep(std::span<const double> gammas,
                                  const GridPolicy& policy = GridPolicy::degenerate_sweep());

/// The piecewise test function: u(x) = x - gamma^{1/3} x^2 up to the junction
/// a = gamma^{-1/3}/2, constant plateau to 1-a, mirrored on the right half.
/// C^1 by construction. Requires gamma >= 8.
ScalarField plateau_test_function(double gamma, const Grid& grid);

enum class ResidualSign { nonnegative, nonpositive };

struct SupersolutionCheck {
    double residual = 0.0;  // min R for >=0 checks, max R for <=0 checks
    bool holds = false;
};

/// Evaluates R = -1/2 u'' + gamma V (u - int u dmu) - c u at every grid node
/// except the two junction nodes (u'' jumps there), with the exact piecewise
/// second derivative and the plateau integral by quadrature.
SupersolutionCheck supersolution_check(double gamma, double c, ResidualSign sign,
                                       const Grid& grid);

/// (c1_hat, c2_hat) from the proven exponent window: smallest lambda0
/// gamma^{-1/3} and largest lambda0 gamma^{-2/3} over the sweep.
std::pair<double, double> bound_certificate(const SweepResult& sweep);

}  // namespace jumplab
