#include "jumplab/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jumplab/errors.hpp"

namespace jumplab {

std::string to_string(EigenMethod m) {
    switch (m) {
        case EigenMethod::fixed_point: return "fixed_point";
        case EigenMethod::matrix: return "matrix";
        case EigenMethod::both: return "both";
    }
    return "?";
}

EigenMethod eigen_method_from_string(const std::string& s) {
    if (s == "fixed_point") return EigenMethod::fixed_point;
    if (s == "matrix") return EigenMethod::matrix;
    if (s == "both") return EigenMethod::both;
    throw InvalidArgument("unknown method '" + s + "' (valid: fixed_point, matrix, both)");
}

NonlocalOperator build_nonlocal_operator(double gamma, const RateField& rate,
                                         const JumpMeasure& measure, const Grid& grid) {
    NonlocalOperator op;
    op.t0 = assemble(0.0, gamma, rate, grid);
    op.coupling.resize(static_cast<size_t>(grid.n_interior));
    for (int i = 0; i < grid.n_interior; ++i) {
        op.coupling[static_cast<size_t>(i)] = gamma * rate.values[static_cast<size_t>(i)];
    }
    op.rule = quadrature_weights(measure, grid);
    if (std::abs(op.rule.total() - 1.0) > 1e-10) {
        throw InvalidMeasure("quadrature weights do not sum to 1");
    }
    return op;
}

namespace {

double rayleigh_quotient(const TridiagonalOperator& t0, std::span<const double> coupling,
                         std::span<const double> w_int, std::span<const double> q) {
    std::vector<double> aq = apply_tridiagonal(t0, q);
    double wq = 0.0;
    for (size_t i = 0; i < q.size(); ++i) wq += w_int[i] * q[i];
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        aq[i] -= coupling[i] * wq;
        num += q[i] * aq[i];
        den += q[i] * q[i];
    }
    return num / den;
}

double residual_norm(const TridiagonalOperator& t0, std::span<const double> coupling,
                     std::span<const double> w_int, std::span<const double> q, double lambda) {
    std::vector<double> aq = apply_tridiagonal(t0, q);
    double wq = 0.0;
    for (size_t i = 0; i < q.size(); ++i) wq += w_int[i] * q[i];
    double rmax = 0.0, qmax = 0.0;
    for (size_t i = 0; i < q.size(); ++i) {
        const double r = aq[i] - coupling[i] * wq - lambda * q[i];
        rmax = std::max(rmax, std::abs(r));
        qmax = std::max(qmax, std::abs(q[i]));
    }
    return rmax / qmax;
}

std::vector<double> positive_start(const Grid& grid) {
    std::vector<double> q(static_cast<size_t>(grid.n_interior));
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < grid.n_interior; ++i) {
        q[static_cast<size_t>(i)] = std::sin(pi * grid.nodes[static_cast<size_t>(i)]);
    }
    return q;
}

void normalize_max(std::vector<double>& q) {
    double best = 0.0;
    for (double v : q) {
        if (std::abs(v) > std::abs(best)) best = v;
    }
    for (double& v : q) v /= best;  // max-magnitude entry becomes +1
}

TridiagonalOperator shifted(const TridiagonalOperator& op, double sigma) {
    TridiagonalOperator s = op;
    for (double& d : s.diag) d -= sigma;
    return s;
}

/// Sturm bisection for the smallest eigenvalue of a symmetric tridiagonal.
double smallest_eigenvalue_bisection(const TridiagonalOperator& op, double lo, double hi) {
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(std::abs(hi), 1.0); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eigenvalue_count_below(op, mid) == 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double base_dirichlet_eigenvalue(double gamma, const RateField& rate, const Grid& grid) {
    const TridiagonalOperator t0 = assemble(0.0, gamma, rate, grid);
    const double shift = gamma * rate.min_v;
    const double upper = gamma * rate.max_v + 2.0 / (grid.h * grid.h);

    std::vector<double> q = positive_start(grid);
    double lambda = shift;
    bool converged = false;
    try {
        const TridiagonalFactor factor(shifted(t0, shift));
        double prev = 0.0;
        for (int it = 0; it < 300; ++it) {
            factor.solve_inplace(q);
            normalize_max(q);
            // Rayleigh quotient of the unshifted operator
            std::vector<double> tq = apply_tridiagonal(t0, q);
            double num = 0.0, den = 0.0;
            for (size_t i = 0; i < q.size(); ++i) {
                num += q[i] * tq[i];
                den += q[i] * q[i];
            }
            lambda = num / den;
            if (it > 0 && std::abs(lambda - prev) <= 1e-14 * std::abs(lambda)) {
                converged = true;
                break;
            }
            prev = lambda;
        }
    } catch (const SingularSystem&) {
        converged = false;
    }

    // verify with a Sturm count; fall back to bisection if suspicious
    const double eps = 1e-9 * std::max(std::abs(lambda), 1.0);
    if (!converged || eigenvalue_count_below(t0, lambda - eps) != 0 ||
        eigenvalue_count_below(t0, lambda + eps) < 1) {
        lambda = smallest_eigenvalue_bisection(t0, shift, upper);
    }
    return lambda;
}

double fixed_point_residual(double lambda, double gamma, const RateField& rate,
                            const JumpMeasure& measure, const Grid& grid) {
    const QuadratureRule rule = quadrature_weights(measure, grid);
    const ScalarField u = solve_u(lambda, gamma, rate, grid);
    const ScalarField v = solve_v(lambda, gamma, rate, grid);
    return rule.integrate(u) / rule.integrate(v) - lambda;
}

EigenResult principal_eigenvalue_fixed_point(double gamma, const RateField& rate,
                                             const JumpMeasure& measure, const Grid& grid,
                                             double rel_tol) {
    if (!(rel_tol > 1e-14) || !(rel_tol < 1e-2)) {
        throw InvalidArgument("rel_tol must lie in (1e-14, 1e-2)");
    }
    if (gamma < 0.0) throw InvalidArgument("gamma must be nonnegative");
    if (rate.min_v <= 0.0) {
        throw InvalidArgument("degenerate rate field requires the matrix route");
    }
    if (gamma == 0.0) {
        // no jump term: the fixed point degenerates, fall back to the matrix route
        return principal_eigenvalue_matrix(gamma, rate, measure, grid, rel_tol);
    }

    const double lambda_star = base_dirichlet_eigenvalue(gamma, rate, grid);
    const QuadratureRule rule = quadrature_weights(measure, grid);
    int evals = 0;
    auto G = [&](double lambda) {
        ++evals;
        const ScalarField u = solve_u(lambda, gamma, rate, grid);
        const ScalarField v = solve_v(lambda, gamma, rate, grid);
        return rule.integrate(u) / rule.integrate(v) - lambda;
    };

    if (!(G(0.0) > 0.0)) {
        throw NoRoot("fixed point: G(0) <= 0, configuration violates positivity");
    }

    // bracket scan: 64 equal steps; the smallest root lives in the first
    // sign-change bracket
    const double top = 0.999 * lambda_star;
    const int steps = 64;
    double a = 0.0, b = -1.0;
    for (int j = 1; j <= steps; ++j) {
        const double lam = top * j / steps;
        double g;
        try {
            g = G(lam);
        } catch (const SingularSystem&) {
            break;  // out-of-bracket signal: stop scanning upward
        }
        if (g <= 0.0) {
            b = lam;
            break;
        }
        a = lam;
    }
    if (b < 0.0) {
        throw NoRoot("fixed point: no sign change found in (0, 0.999*lambda_star)");
    }

    int it = 0;
    for (; it < 200 && (b - a) > rel_tol * b; ++it) {
        const double mid = 0.5 * (a + b);
        if (G(mid) > 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    if ((b - a) > rel_tol * b) {
        throw NonConvergence("fixed point: bisection did not converge in 200 iterations");
    }

    EigenResult result;
    result.lambda0 = 0.5 * (a + b);
    result.method = EigenMethod::fixed_point;
    result.lambda_star = lambda_star;
    result.u_profile = solve_u(result.lambda0, gamma, rate, grid);
    result.v_profile = solve_v(result.lambda0, gamma, rate, grid);
    result.residual = std::abs(rule.integrate(result.u_profile) /
                                   rule.integrate(result.v_profile) -
                               result.lambda0);
    result.iterations = evals;
    if (!(result.lambda0 > 0.0) || !(result.lambda0 < lambda_star)) {
        throw NonConvergence("fixed point: eigenvalue guard 0 < lambda0 < lambda_star failed");
    }
    return result;
}

EigenResult principal_eigenvalue_matrix(double gamma, const RateField& rate,
                                        const JumpMeasure& measure, const Grid& grid,
                                        double rel_tol) {
    if (!(rel_tol > 1e-14) || !(rel_tol < 1e-2)) {
        throw InvalidArgument("rel_tol must lie in (1e-14, 1e-2)");
    }
    if (gamma < 0.0) throw InvalidArgument("gamma must be nonnegative");

    const NonlocalOperator A = build_nonlocal_operator(gamma, rate, measure, grid);
    const std::span<const double> w_int = A.rule.interior_weights();
    const double lambda_star = base_dirichlet_eigenvalue(gamma, rate, grid);

    std::vector<double> q = positive_start(grid);
    normalize_max(q);
    double sigma = 0.0;
    double lambda = 0.0, lambda_prev = 0.0, lambda_prev2 = 0.0;
    int it = 0;
    bool converged = false;
    int oscillations = 0;

    for (; it < 500; ++it) {
        std::vector<double> z;
        double denom = 0.0;
        try {
            const TridiagonalFactor factor(shifted(A.t0, sigma));
            z = factor.solve(A.coupling);
            double wz = 0.0;
            for (size_t i = 0; i < z.size(); ++i) wz += w_int[i] * z[i];
            denom = 1.0 - wz;
            if (std::abs(denom) < 1e-13 * (1.0 + std::abs(wz))) {
                // rank-one breakdown: reshift and retry
                sigma += std::max(1e-8, 1e-8 * std::abs(sigma));
                continue;
            }
            std::vector<double> y = factor.solve(q);
            double wy = 0.0;
            for (size_t i = 0; i < y.size(); ++i) wy += w_int[i] * y[i];
            const double s = wy / denom;
            for (size_t i = 0; i < y.size(); ++i) q[i] = y[i] + s * z[i];
        } catch (const SingularSystem&) {
            sigma += std::max(1e-10, 1e-10 * std::abs(sigma));
            continue;
        }
        normalize_max(q);

        lambda_prev2 = lambda_prev;
        lambda_prev = lambda;
        lambda = rayleigh_quotient(A.t0, A.coupling, w_int, q);

        if (it >= 1) {
            const double scale = std::max({std::abs(lambda), std::abs(lambda_prev), 1e-300});
            if (std::abs(lambda - lambda_prev) <= rel_tol * scale) {
                converged = true;
                break;
            }
            // oscillating Rayleigh quotients indicate a complex pair
            if (it >= 3 &&
                std::abs(lambda - lambda_prev2) < 1e-9 * scale &&
                std::abs(lambda - lambda_prev) > 1e-4 * scale) {
                if (++oscillations > 5) {
                    throw NonConvergence(
                        "matrix route: Rayleigh quotients oscillate; "
                        "smallest eigenvalue may not be real");
                }
            }
        }
        sigma = lambda;
    }
    if (!converged) {
        throw NonConvergence("matrix route: no convergence after 500 iterations");
    }

    EigenResult result;
    result.lambda0 = lambda;
    result.method = EigenMethod::matrix;
    result.lambda_star = lambda_star;
    result.iterations = it + 1;
    result.residual = residual_norm(A.t0, A.coupling, w_int, q, lambda);
    result.u_profile = ScalarField(std::move(q), 0.0, 0.0);  // eigenvector, max-normalized
    if (gamma == 0.0) {
        // no jump term: lambda0 coincides with lambda_star
        if (!(result.lambda0 > 0.0) ||
            std::abs(result.lambda0 - lambda_star) > 1e-9 * lambda_star) {
            throw NonConvergence("matrix route: gamma = 0 should reproduce lambda_star");
        }
        result.v_profile = solve_v(0.0, gamma, rate, grid);  // torsion profile
        return result;
    }
    result.v_profile = solve_v(lambda, gamma, rate, grid);
    if (!(result.lambda0 > 0.0) || !(result.lambda0 < lambda_star)) {
        throw NonConvergence("matrix route: eigenvalue guard 0 < lambda0 < lambda_star failed");
    }
    return result;
}

EigenResult principal_eigenvalue(double gamma, const RateField& rate,
                                 const JumpMeasure& measure, const Grid& grid,
                                 EigenMethod method, double rel_tol) {
    if (method == EigenMethod::both) {
        throw InvalidArgument("principal_eigenvalue dispatch needs a single method");
    }
    if (rate.min_v <= 0.0 || rate.degenerate_ok) {
        method = EigenMethod::matrix;  // degenerate rate fields use the matrix route
    }
    return method == EigenMethod::fixed_point
               ? principal_eigenvalue_fixed_point(gamma, rate, measure, grid, rel_tol)
               : principal_eigenvalue_matrix(gamma, rate, measure, grid, rel_tol);
}

RichardsonEigen principal_eigenvalue_richardson(double gamma, const RatePreset& rate,
                                                const JumpPreset& jump, int n_interior,
                                                EigenMethod method, double rel_tol) {
    RichardsonEigen out;
    const Grid coarse = Grid::uniform(n_interior);
    const Grid fine = Grid::uniform(2 * n_interior + 1);  // halves the spacing
    const RateField vc = build_rate_field(rate, coarse);
    const RateField vf = build_rate_field(rate, fine);
    const JumpMeasure mc = build_jump_measure(jump, coarse);
    const JumpMeasure mf = build_jump_measure(jump, fine);

    const EigenResult rc = principal_eigenvalue(gamma, vc, mc, coarse, method, rel_tol);
    const EigenResult rf = principal_eigenvalue(gamma, vf, mf, fine, method, rel_tol);

    out.lambda_h = rc.lambda0;
    out.lambda_half_h = rf.lambda0;
    out.lambda_richardson = (4.0 * rf.lambda0 - rc.lambda0) / 3.0;
    out.h = coarse.h;
    out.iterations = rc.iterations + rf.iterations;
    out.residual = rf.residual;
    out.method = rf.method;
    return out;
}

}  // namespace jumplab
