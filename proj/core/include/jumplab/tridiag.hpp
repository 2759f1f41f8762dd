#pragma once

#include <span>
#include <vector>

#include "jumplab/grid.hpp"
#include "jumplab/rate_field.hpp"

namespace jumplab {

/// Interior-node discretization of -1/2 d^2/dx^2 + (gamma V - lambda) with
/// homogeneous Dirichlet rows eliminated. sub[0] and super[n-1] are unused.
struct TridiagonalOperator {
    std::vector<double> sub, diag, super;

    int size() const { return static_cast<int>(diag.size()); }
};

/// diag_i = 1/h^2 + gamma V(x_i) - lambda, off-diagonals -1/(2 h^2).
/// gamma is capped at 1e5 (double-precision underflow policy of the solvers).
TridiagonalOperator assemble(double lambda, double gamma, const RateField& rate,
                             const Grid& grid);

/// Thomas elimination without pivoting. Valid for lambda below the principal
/// Dirichlet eigenvalue of the operator, where all leading minors are SPD.
/// Throws SingularSystem on a vanishing pivot.
class TridiagonalFactor {
  public:
    explicit TridiagonalFactor(const TridiagonalOperator& op);

    std::vector<double> solve(std::span<const double> rhs) const;
    void solve_inplace(std::vector<double>& rhs) const;

  private:
    std::vector<double> sub_;     // elimination multipliers
    std::vector<double> pivot_;   // diagonal pivots
    std::vector<double> super_;
};

std::vector<double> solve_tridiagonal(const TridiagonalOperator& op,
                                      std::span<const double> rhs);

/// Multiply y = T x.
std::vector<double> apply_tridiagonal(const TridiagonalOperator& op, std::span<const double> x);

/// Number of eigenvalues of the symmetric operator strictly below sigma
/// (Sturm count via the LDL^T pivot recurrence).
int eigenvalue_count_below(const TridiagonalOperator& op, double sigma);

}  // namespace jumplab
