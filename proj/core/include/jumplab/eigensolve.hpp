#pragma once

#include <string>

#include "jumplab/bvp.hpp"
#include "jumplab/grid.hpp"
#include "jumplab/jump_measure.hpp"
#include "jumplab/quadrature.hpp"
#include "jumplab/rate_field.hpp"
#include "jumplab/scalar_field.hpp"
#include "jumplab/tridiag.hpp"

namespace jumplab {

enum class EigenMethod { fixed_point, matrix, both };

std::string to_string(EigenMethod m);
EigenMethod eigen_method_from_string(const std::string& s);

/// Discretized non-local operator A = T0 - c w^T: T0 is the lambda = 0
/// tridiagonal part, c_i = gamma V(x_i), and w is the quadrature row of the
/// jump measure (full row stored; the matrix acts on interior nodes).
struct NonlocalOperator {
    TridiagonalOperator t0;
    std::vector<double> coupling;  // gamma V(x_i)
    QuadratureRule rule;
};

NonlocalOperator build_nonlocal_operator(double gamma, const RateField& rate,
                                         const JumpMeasure& measure, const Grid& grid);

struct EigenResult {
    double lambda0 = 0.0;
    ScalarField u_profile;
    ScalarField v_profile;
    EigenMethod method = EigenMethod::fixed_point;
    int iterations = 0;
    double residual = 0.0;     // |G(lambda0)| or eigen-residual norm
    double lambda_star = 0.0;  // principal Dirichlet eigenvalue of -1/2 D + gamma V
};

/// Smallest eigenvalue of the symmetric part T0 (no jump term), by shifted
/// inverse iteration with a Sturm-count verification.
double base_dirichlet_eigenvalue(double gamma, const RateField& rate, const Grid& grid);

/// G(lambda) = F(lambda) - lambda with F = int u dmu / int v dmu.
/// Throws SingularSystem when lambda crosses the solvable range.
double fixed_point_residual(double lambda, double gamma, const RateField& rate,
                            const JumpMeasure& measure, const Grid& grid);

/// Smallest positive root of G via a 64-step bracket scan over
/// (0, 0.999 lambda_star) refined by bisection. gamma = 0 falls back to the
/// matrix route (the fixed point degenerates without the jump term).
EigenResult principal_eigenvalue_fixed_point(double gamma, const RateField& rate,
                                             const JumpMeasure& measure, const Grid& grid,
                                             double rel_tol = 1e-10);

/// Smallest-real-part eigenvalue of A = T0 - c w^T by shifted inverse
/// iteration; each solve uses the tridiagonal factorization plus the rank-one
/// correction through the scalar 1 - w^T z.
EigenResult principal_eigenvalue_matrix(double gamma, const RateField& rate,
                                        const JumpMeasure& measure, const Grid& grid,
                                        double rel_tol = 1e-12);

/// Dispatch on method; degenerate rate fields always use the matrix route.
EigenResult principal_eigenvalue(double gamma, const RateField& rate,
                                 const JumpMeasure& measure, const Grid& grid,
                                 EigenMethod method, double rel_tol = 1e-10);

struct RichardsonEigen {
    double lambda_h = 0.0;       // on the requested grid
    double lambda_half_h = 0.0;  // on the twice-refined grid
    double lambda_richardson = 0.0;
    double h = 0.0;
    int iterations = 0;
    double residual = 0.0;
    EigenMethod method = EigenMethod::fixed_point;
};

/// Order-2 Richardson extrapolation from grids with n and 2n+1 interior
/// nodes (spacings h and h/2); presets are resampled on each grid.
RichardsonEigen principal_eigenvalue_richardson(double gamma, const RatePreset& rate,
                                                const JumpPreset& jump, int n_interior,
                                                EigenMethod method, double rel_tol = 1e-10);

}  // namespace jumplab
