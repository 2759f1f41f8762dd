#include "jumplab/degenerate.hpp"

#include <algorithm>
#include <cmath>

#include "jumplab/errors.hpp"
#include "jumplab/quadrature.hpp"

namespace jumplab {

DegenerateReport degenerate_sweep(std::span<const double> gammas, const GridPolicy& policy) {
    DegenerateReport report;
    report.sweep = sweep_gamma(gammas, RatePreset::degenerate(), JumpPreset::uniform(),
                               policy, EigenMethod::matrix);
    if (report.sweep.empty()) return report;

    report.lambda_increasing = true;
    for (size_t i = 1; i < report.sweep.lambda0s.size(); ++i) {
        if (!(report.sweep.lambda0s[i] > report.sweep.lambda0s[i - 1])) {
            report.lambda_increasing = false;
        }
    }
    if (report.sweep.points.size() >= 3) {
        const PowerLawFit fit = fit_power_law(report.sweep.gammas, report.sweep.lambda0s);
        report.slopes_in_window = !fit.local_slopes.empty();
        for (double s : fit.local_slopes) {
            if (s < 1.0 / 3.0 - 0.05 || s > 2.0 / 3.0 + 0.05) report.slopes_in_window = false;
        }
    }
    const auto [c1, c2] = bound_certificate(report.sweep);
    report.c1_hat = c1;
    report.c2_hat = c2;
    return report;
}

namespace {

struct TestFunction {
    double g;        // gamma^{1/3}
    double a;        // junction, gamma^{-1/3}/2
    double plateau;  // gamma^{-1/3}/4

    explicit TestFunction(double gamma)
        : g(std::cbrt(gamma)), a(0.5 / g), plateau(0.25 / g) {}

    double value(double s) const {  // s = min(x, 1-x)
        return s < a ? s - g * s * s : plateau;
    }
    double second_derivative(double s) const { return s < a ? -2.0 * g : 0.0; }
};

}  // namespace

ScalarField plateau_test_function(double gamma, const Grid& grid) {
    if (!(gamma >= 8.0)) {
        throw InvalidArgument("test function needs gamma >= 8 so the junction stays below 1/2");
    }
    const TestFunction u(gamma);
    const int n = grid.n_interior;
    std::vector<double> vals(static_cast<size_t>(n));
    for (int i = 1; 2 * i <= n + 1; ++i) {  // evaluate one half and mirror
        const double v = u.value(grid.nodes[static_cast<size_t>(i) - 1]);
        vals[static_cast<size_t>(i) - 1] = v;
        vals[static_cast<size_t>(n - i)] = v;
    }
    return ScalarField(std::move(vals), 0.0, 0.0);
}

SupersolutionCheck supersolution_check(double gamma, double c, ResidualSign sign,
                                       const Grid& grid) {
    if (!(gamma >= 8.0)) throw InvalidArgument("supersolution check needs gamma >= 8");
    const TestFunction u(gamma);

    // int u dmu with mu = Lebesgue, by the measure's quadrature rule
    const ScalarField field = plateau_test_function(gamma, grid);
    const JumpMeasure lebesgue = build_jump_measure(JumpPreset::uniform(), grid);
    const double mean_u = quadrature_weights(lebesgue, grid).integrate(field);

    const double half_h = 0.5 * grid.h;
    bool first = true;
    double extreme = 0.0;
    for (int i = 1; i <= grid.n_interior; ++i) {
        const double x = grid.nodes[static_cast<size_t>(i) - 1];
        const double s = std::min(x, 1.0 - x);
        if (std::abs(s - u.a) <= half_h) continue;  // junction nodes excluded
        const double uv = u.value(s);
        const double rate = 6.0 * x * (1.0 - x);
        const double residual =
            -0.5 * u.second_derivative(s) + gamma * rate * (uv - mean_u) - c * uv;
        if (first) {
            extreme = residual;
            first = false;
        } else if (sign == ResidualSign::nonnegative) {
            extreme = std::min(extreme, residual);
        } else {
            extreme = std::max(extreme, residual);
        }
    }
    SupersolutionCheck out;
    out.residual = extreme;
    out.holds = (sign == ResidualSign::nonnegative) ? (extreme >= 0.0) : (extreme <= 0.0);
    return out;
}

std::pair<double, double> bound_certificate(const SweepResult& sweep) {
    if (sweep.empty()) throw InvalidArgument("bound certificate needs a nonempty sweep");
    double c1 = 0.0, c2 = 0.0;
    bool first = true;
    for (size_t i = 0; i < sweep.gammas.size(); ++i) {
        const double gamma = sweep.gammas[i];
        const double lam = sweep.lambda0s[i];
        const double r1 = lam * std::pow(gamma, -1.0 / 3.0);
        const double r2 = lam * std::pow(gamma, -2.0 / 3.0);
        if (first) {
            c1 = r1;
            c2 = r2;
            first = false;
        } else {
            c1 = std::min(c1, r1);
            c2 = std::max(c2, r2);
        }
    }
    return {c1, c2};
}

}  // namespace jumplab
