#pragma once

#include <utility>

#include "jumplab/grid.hpp"
#include "jumplab/rate_field.hpp"
#include "jumplab/scalar_field.hpp"
#include "jumplab/tridiag.hpp"

namespace jumplab {

/// Solve 1/2 u'' + (lambda - gamma V) u = 0 with u = 1 on the boundary.
/// For lambda <= gamma * min V the discrete maximum principle gives
/// 0 <= u <= 1; a violation raises DiscretizationFailure. Values may
/// underflow to 0 for large gamma.
ScalarField solve_u(double lambda, double gamma, const RateField& rate, const Grid& grid);

/// Solve 1/2 v'' + (lambda - gamma V) v = -1 with v = 0 on the boundary.
ScalarField solve_v(double lambda, double gamma, const RateField& rate, const Grid& grid);

struct ClosedFormUV {
    double u = 0.0;
    double v = 0.0;
};

/// Constant-rate solutions: u = cosh(kappa(x-1/2))/cosh(kappa/2),
/// v = (1-u)/(gamma v0 - lambda), kappa = sqrt(2(gamma v0 - lambda)).
/// Requires gamma * v0 > lambda (throws OutOfDomain otherwise).
ClosedFormUV closed_form_constant_rate(double lambda, double gamma, double v0, double x);

/// Integral of the closed-form u over (0,1): (2/kappa) tanh(kappa/2).
double closed_form_mean_u(double lambda, double gamma, double v0);

/// Inward one-sided second-order boundary derivatives: (+f'(0), -f'(1)).
std::pair<double, double> boundary_normal_derivative(const ScalarField& f, const Grid& grid);

}  // namespace jumplab
