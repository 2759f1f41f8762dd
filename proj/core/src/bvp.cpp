#include "jumplab/bvp.hpp"

#include <cmath>

#include "jumplab/errors.hpp"

namespace jumplab {

ScalarField solve_u(double lambda, double gamma, const RateField& rate, const Grid& grid) {
    const TridiagonalOperator op = assemble(lambda, gamma, rate, grid);
    const int n = grid.n_interior;
    const double load = 0.5 / (grid.h * grid.h);
    std::vector<double> rhs(static_cast<size_t>(n), 0.0);
    rhs.front() = load;   // boundary value 1 folded into the first row
    rhs.back() = load;
    TridiagonalFactor(op).solve_inplace(rhs);

    if (lambda <= gamma * rate.min_v) {
        for (double v : rhs) {
            if (!(v >= 0.0) || v > 1.0 + 1e-12) {
                throw DiscretizationFailure(
                    "solve_u: maximum principle violated although lambda <= gamma*min V");
            }
        }
    }
    return ScalarField(std::move(rhs), 1.0, 1.0);
}

ScalarField solve_v(double lambda, double gamma, const RateField& rate, const Grid& grid) {
    const TridiagonalOperator op = assemble(lambda, gamma, rate, grid);
    std::vector<double> rhs(static_cast<size_t>(grid.n_interior), 1.0);
    TridiagonalFactor(op).solve_inplace(rhs);

    if (lambda <= gamma * rate.min_v) {
        for (double v : rhs) {
            if (!(v >= 0.0)) {
                throw DiscretizationFailure(
                    "solve_v: positivity violated although lambda <= gamma*min V");
            }
        }
    }
    return ScalarField(std::move(rhs), 0.0, 0.0);
}

ClosedFormUV closed_form_constant_rate(double lambda, double gamma, double v0, double x) {
    const double c = gamma * v0 - lambda;
    if (!(c > 0.0)) throw OutOfDomain("closed form requires gamma*V0 > lambda");
    const double kappa = std::sqrt(2.0 * c);
    // cosh(kappa(x-1/2))/cosh(kappa/2) in overflow-safe form
    const double u = (std::exp(-kappa * (1.0 - x)) + std::exp(-kappa * x)) /
                     (1.0 + std::exp(-kappa));
    return {u, (1.0 - u) / c};
}

double closed_form_mean_u(double lambda, double gamma, double v0) {
    const double c = gamma * v0 - lambda;
    if (!(c > 0.0)) throw OutOfDomain("closed form requires gamma*V0 > lambda");
    const double kappa = std::sqrt(2.0 * c);
    return (2.0 / kappa) * std::tanh(0.5 * kappa);
}

std::pair<double, double> boundary_normal_derivative(const ScalarField& f, const Grid& grid) {
    const int n = f.size();
    const double h = grid.h;
    const double d0 = (-3.0 * f.value(0) + 4.0 * f.value(1) - f.value(2)) / (2.0 * h);
    const double d1 = (-3.0 * f.value(n + 1) + 4.0 * f.value(n) - f.value(n - 1)) / (2.0 * h);
    return {d0, d1};  // both measured inward
}

}  // namespace jumplab
