#include "jumplab/quadrature.hpp"

#include <cmath>

#include "jumplab/errors.hpp"

namespace jumplab {

double QuadratureRule::total() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double QuadratureRule::integrate(const ScalarField& f) const {
    const int n = static_cast<int>(weights.size()) - 2;
    double s = weights.front() * f.left + weights.back() * f.right;
    for (int i = 1; i <= n; ++i) {
        s += weights[static_cast<size_t>(i)] * f.interior[static_cast<size_t>(i) - 1];
    }
    return s;
}

double QuadratureRule::integrate_interior(std::span<const double> interior) const {
    double s = 0.0;
    for (size_t i = 0; i < interior.size(); ++i) s += weights[i + 1] * interior[i];
    return s;
}

QuadratureRule quadrature_weights(const JumpMeasure& measure, const Grid& grid) {
    const int n = grid.n_interior;
    QuadratureRule rule;
    rule.weights.assign(static_cast<size_t>(n) + 2, 0.0);

    if (measure.density_mass > 0.0) {
        const double h = grid.h;
        double raw = 0.5 * h * (measure.density_left + measure.density_right);
        for (double d : measure.density) raw += h * d;
        if (!(raw > 0.0)) throw InvalidMeasure("density part has zero discrete mass");
        // rescale so the discrete density mass matches the analytic one
        const double scale = measure.density_mass / raw;
        rule.weights.front() = 0.5 * h * measure.density_left * scale;
        rule.weights.back() = 0.5 * h * measure.density_right * scale;
        for (int i = 1; i <= n; ++i) {
            rule.weights[static_cast<size_t>(i)] =
                h * measure.density[static_cast<size_t>(i) - 1] * scale;
        }
    }

    for (const Atom& a : measure.atoms) {
        const double t = a.location / grid.h;
        int j = static_cast<int>(t);
        if (j > n) j = n;
        const double theta = t - j;
        rule.weights[static_cast<size_t>(j)] += (1.0 - theta) * a.mass;
        rule.weights[static_cast<size_t>(j) + 1] += theta * a.mass;
    }
    return rule;
}

}  // namespace jumplab
