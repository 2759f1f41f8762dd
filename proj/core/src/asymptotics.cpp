#include "jumplab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "jumplab/bvp.hpp"
#include "jumplab/errors.hpp"

namespace jumplab {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

int GridPolicy::n_for(double gamma) const {
    double n = min_n;
    if (nodes_per_sqrt_gamma > 0.0 && gamma > 0.0) {
        n = std::max(n, nodes_per_sqrt_gamma * std::sqrt(gamma));
    }
    if (nodes_per_cbrt_gamma > 0.0 && gamma > 0.0) {
        n = std::max(n, nodes_per_cbrt_gamma * std::cbrt(gamma));
    }
    return static_cast<int>(std::ceil(n));
}

double theoretical_limit_constant(int k, const RateField& rate, const JumpMeasure& measure,
                                  const Grid& grid) {
    if (rate.min_v <= 0.0 || rate.v_left <= 0.0 || rate.v_right <= 0.0) {
        throw OutOfHypothesis("limit constant requires a strictly positive rate field");
    }
    if (measure.pure_atom) {
        throw OutOfHypothesis("limit constant requires a density part near the boundary");
    }
    if (k < 0 || k != measure.k_vanish) {
        throw InvalidArgument("k = " + std::to_string(k) +
                              " inconsistent with the measure's vanishing order " +
                              std::to_string(measure.k_vanish));
    }

    // int (1/V) dmu: endpoint-corrected trapezoid on the density plus atoms
    const double h = grid.h;
    const double g_left = measure.density_left / rate.v_left;
    const double g_right = measure.density_right / rate.v_right;
    double integral = 0.5 * (g_left + g_right);
    for (int i = 0; i < grid.n_interior; ++i) {
        integral += measure.density[static_cast<size_t>(i)] / rate.values[static_cast<size_t>(i)];
    }
    integral *= h;
    // (mu/V)' = mu'/V - mu V'/V^2 at the endpoints
    const double gp_left = measure.deriv_left(1) / rate.v_left -
                           measure.density_left * rate.d1_left / (rate.v_left * rate.v_left);
    const double gp_right = measure.deriv_right(1) / rate.v_right -
                            measure.density_right * rate.d1_right / (rate.v_right * rate.v_right);
    integral += h * h / 12.0 * (gp_left - gp_right);
    for (const Atom& a : measure.atoms) {
        integral += a.mass / rate.value_at(a.location, grid);
    }
    if (!(integral > 0.0)) throw OutOfHypothesis("int (1/V) dmu must be positive and finite");

    const double expo = 0.5 * (k + 1);
    const double t_left = measure.deriv_left(k);
    const double t_right = (k % 2 == 0) ? measure.deriv_right(k) : -measure.deriv_right(k);
    const double numer =
        std::pow(rate.v_left, -expo) * t_left + std::pow(rate.v_right, -expo) * t_right;
    return numer / (std::pow(2.0, expo) * integral);
}

SweepResult sweep_gamma(std::span<const double> gammas, const RatePreset& rate,
                        const JumpPreset& jump, const GridPolicy& policy,
                        EigenMethod method) {
    SweepResult out;
    out.limit_constant = kNaN;
    out.extrapolated_intercept = kNaN;
    out.fit_exponent = out.fit_constant = out.fit_residual = kNaN;
    if (gammas.empty()) return out;

    for (size_t i = 0; i < gammas.size(); ++i) {
        if (!(gammas[i] > 0.0)) throw InvalidArgument("sweep gammas must be positive");
        if (gammas[i] > 1e5) throw InvalidArgument("sweep gammas are capped at 1e5");
        if (i > 0 && !(gammas[i] > gammas[i - 1])) {
            throw InvalidArgument("sweep gammas must be strictly increasing");
        }
    }

    // vanishing order from the measure itself (declared, never inferred)
    const Grid probe = Grid::uniform(63);
    const JumpMeasure probe_measure = build_jump_measure(jump, probe);
    out.k = probe_measure.pure_atom ? 0 : probe_measure.k_vanish;

    std::vector<std::future<SweepPoint>> futures;
    futures.reserve(gammas.size());
    for (double gamma : gammas) {
        futures.push_back(std::async(std::launch::async, [&, gamma]() {
            const int n = policy.n_for(gamma);
            const RichardsonEigen r =
                principal_eigenvalue_richardson(gamma, rate, jump, n, method);
            SweepPoint p;
            p.gamma = gamma;
            p.h = r.h;
            p.lambda0 = r.lambda_h;
            p.lambda0_richardson = r.lambda_richardson;
            p.scaled = std::pow(gamma, 0.5 * (out.k - 1)) * r.lambda_richardson;
            p.k = out.k;
            p.method = r.method;
            p.iterations = r.iterations;
            p.residual = r.residual;
            return p;
        }));
    }
    for (size_t i = 0; i < futures.size(); ++i) {
        try {
            out.points.push_back(futures[i].get());
        } catch (const Error& e) {
            throw Error("sweep at gamma = " + std::to_string(gammas[i]) + ": " + e.what());
        }
    }
    for (const SweepPoint& p : out.points) {
        out.gammas.push_back(p.gamma);
        out.lambda0s.push_back(p.lambda0_richardson);
        out.scaled.push_back(p.scaled);
    }

    if (out.points.size() >= 3) {
        const PowerLawFit fit = fit_power_law(out.gammas, out.lambda0s);
        out.fit_exponent = fit.exponent;
        out.fit_constant = fit.constant;
        out.fit_residual = fit.max_log_residual;
        out.extrapolated_intercept = fit_corrected_limit(out.gammas, out.scaled);
    }

    try {
        const Grid ref = Grid::uniform(4001);
        out.limit_constant = theoretical_limit_constant(out.k, build_rate_field(rate, ref),
                                                        build_jump_measure(jump, ref), ref);
    } catch (const Error&) {
        out.limit_constant = kNaN;  // degenerate rate or pure atom: no limit formula
    }
    return out;
}

PowerLawFit fit_power_law(std::span<const double> gammas, std::span<const double> lambdas) {
    if (gammas.size() != lambdas.size() || gammas.size() < 3) {
        throw InvalidArgument("power-law fit needs >= 3 points");
    }
    const size_t n = gammas.size();
    std::vector<double> lx(n), ly(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(gammas[i] > 0.0) || !(lambdas[i] > 0.0)) {
            throw InvalidArgument("power-law fit needs positive inputs");
        }
        lx[i] = std::log(gammas[i]);
        ly[i] = std::log(lambdas[i]);
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.constant = std::exp(my - fit.exponent * mx);
    for (size_t i = 0; i < n; ++i) {
        const double pred = std::log(fit.constant) + fit.exponent * lx[i];
        fit.max_log_residual = std::max(fit.max_log_residual, std::abs(ly[i] - pred));
    }
    for (size_t i = 0; i + 1 < n; ++i) {
        fit.local_slopes.push_back((ly[i + 1] - ly[i]) / (lx[i + 1] - lx[i]));
    }
    return fit;
}

double fit_corrected_limit(std::span<const double> gammas, std::span<const double> scaled) {
    if (gammas.size() != scaled.size() || gammas.size() < 3) {
        throw InvalidArgument("corrected-limit fit needs >= 3 points");
    }
    const size_t n = gammas.size();
    // least squares of scaled = c + a * gamma^{-1/2}
    double s1 = static_cast<double>(n), sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        if (!(gammas[i] > 0.0)) throw InvalidArgument("corrected-limit fit needs gamma > 0");
        const double x = 1.0 / std::sqrt(gammas[i]);
        sx += x;
        sxx += x * x;
        sy += scaled[i];
        sxy += x * scaled[i];
    }
    const double det = s1 * sxx - sx * sx;
    if (std::abs(det) < 1e-14 * s1 * sxx) {
        throw InvalidArgument("corrected-limit fit: degenerate design matrix");
    }
    return (sy * sxx - sx * sxy) / det;
}

double fit_corrected_limit(const SweepResult& sweep) {
    return fit_corrected_limit(sweep.gammas, sweep.scaled);
}

ExpDecayFit exponential_decay_fit(std::span<const double> gammas,
                                  std::span<const double> lambdas) {
    if (gammas.size() != lambdas.size() || gammas.size() < 4) {
        throw InvalidArgument("exponential decay fit needs >= 4 points");
    }
    const size_t n = gammas.size();
    std::vector<double> x(n), y(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(lambdas[i] > 0.0)) throw InvalidArgument("exponential decay fit needs lambda > 0");
        x[i] = std::sqrt(gammas[i]);
        y[i] = std::log(lambdas[i]);
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = (y[i] - my) - slope * (x[i] - mx);
        ss_res += r * r;
    }
    return {-slope, (syy > 0.0) ? 1.0 - ss_res / syy : 1.0};
}

LimitDiagnostics limit_diagnostics(double gamma, const RateField& rate,
                                   const JumpMeasure& measure, const Grid& grid,
                                   double interior_margin) {
    if (!(interior_margin > 0.0) || !(interior_margin < 0.5)) {
        throw InvalidArgument("interior margin must lie in (0, 1/2)");
    }
    if (!(gamma > 0.0)) throw InvalidArgument("diagnostics need gamma > 0");

    const EigenMethod method =
        rate.min_v > 0.0 ? EigenMethod::fixed_point : EigenMethod::matrix;
    const EigenResult eig = principal_eigenvalue(gamma, rate, measure, grid, method);

    LimitDiagnostics d;
    d.lambda0 = eig.lambda0;
    d.sublinearity_ratio = eig.lambda0 / gamma;

    const ScalarField& v = eig.v_profile;
    for (int i = 1; i <= grid.n_interior; ++i) {
        const double x = grid.nodes[static_cast<size_t>(i) - 1];
        if (x < interior_margin || x > 1.0 - interior_margin) continue;
        const double err =
            std::abs(gamma * v.value(i) - 1.0 / rate.values[static_cast<size_t>(i) - 1]);
        d.v_limit_sup = std::max(d.v_limit_sup, err);
    }

    const ScalarField u = solve_u(eig.lambda0, gamma, rate, grid);
    const auto [d0, d1] = boundary_normal_derivative(u, grid);
    const double scale = 1.0 / std::sqrt(gamma);
    d.normal_deriv_err_left = std::abs(scale * d0 + std::sqrt(2.0 * rate.v_left));
    d.normal_deriv_err_right = std::abs(scale * d1 + std::sqrt(2.0 * rate.v_right));
    return d;
}

}  // namespace jumplab
