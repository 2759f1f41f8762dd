#include "jumplab/tridiag.hpp"

#include <cmath>
#include <string>

#include "jumplab/errors.hpp"

namespace jumplab {

TridiagonalOperator assemble(double lambda, double gamma, const RateField& rate,
                             const Grid& grid) {
    if (!std::isfinite(lambda) || !std::isfinite(gamma)) {
        throw InvalidArgument("assemble: lambda and gamma must be finite");
    }
    if (gamma < 0.0) throw InvalidArgument("assemble: gamma must be nonnegative");
    if (gamma > 1e5) throw InvalidArgument("assemble: gamma capped at 1e5");
    const int n = grid.n_interior;
    const double inv_h2 = 1.0 / (grid.h * grid.h);
    TridiagonalOperator op;
    op.sub.assign(static_cast<size_t>(n), -0.5 * inv_h2);
    op.super.assign(static_cast<size_t>(n), -0.5 * inv_h2);
    op.diag.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        op.diag[static_cast<size_t>(i)] =
            inv_h2 + gamma * rate.values[static_cast<size_t>(i)] - lambda;
    }
    return op;
}

TridiagonalFactor::TridiagonalFactor(const TridiagonalOperator& op) {
    const int n = op.size();
    pivot_.resize(static_cast<size_t>(n));
    sub_.resize(static_cast<size_t>(n));
    super_ = op.super;
    double p = op.diag[0];
    if (p == 0.0) throw SingularSystem("tridiagonal factorization: zero pivot at row 0");
    pivot_[0] = p;
    for (int i = 1; i < n; ++i) {
        const double m = op.sub[static_cast<size_t>(i)] / pivot_[static_cast<size_t>(i) - 1];
        sub_[static_cast<size_t>(i)] = m;
        p = op.diag[static_cast<size_t>(i)] - m * op.super[static_cast<size_t>(i) - 1];
        if (p == 0.0) {
            throw SingularSystem("tridiagonal factorization: zero pivot at row " +
                                 std::to_string(i));
        }
        pivot_[static_cast<size_t>(i)] = p;
    }
}

void TridiagonalFactor::solve_inplace(std::vector<double>& rhs) const {
    const int n = static_cast<int>(pivot_.size());
    for (int i = 1; i < n; ++i) {
        rhs[static_cast<size_t>(i)] -= sub_[static_cast<size_t>(i)] * rhs[static_cast<size_t>(i) - 1];
    }
    rhs[static_cast<size_t>(n) - 1] /= pivot_[static_cast<size_t>(n) - 1];
    for (int i = n - 2; i >= 0; --i) {
        rhs[static_cast<size_t>(i)] =
            (rhs[static_cast<size_t>(i)] - super_[static_cast<size_t>(i)] * rhs[static_cast<size_t>(i) + 1]) /
            pivot_[static_cast<size_t>(i)];
    }
}

std::vector<double> TridiagonalFactor::solve(std::span<const double> rhs) const {
    std::vector<double> x(rhs.begin(), rhs.end());
    solve_inplace(x);
    return x;
}

std::vector<double> solve_tridiagonal(const TridiagonalOperator& op,
                                      std::span<const double> rhs) {
    return TridiagonalFactor(op).solve(rhs);
}

std::vector<double> apply_tridiagonal(const TridiagonalOperator& op, std::span<const double> x) {
    const int n = op.size();
    std::vector<double> y(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double v = op.diag[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
        if (i > 0) v += op.sub[static_cast<size_t>(i)] * x[static_cast<size_t>(i) - 1];
        if (i + 1 < n) v += op.super[static_cast<size_t>(i)] * x[static_cast<size_t>(i) + 1];
        y[static_cast<size_t>(i)] = v;
    }
    return y;
}

int eigenvalue_count_below(const TridiagonalOperator& op, double sigma) {
    const int n = op.size();
    int count = 0;
    double q = 1.0;
    for (int i = 0; i < n; ++i) {
        const double e2 =
            (i > 0) ? op.sub[static_cast<size_t>(i)] * op.sub[static_cast<size_t>(i)] : 0.0;
        double prev = q;
        if (prev == 0.0) prev = 1e-300;  // standard Sturm safeguard
        q = (op.diag[static_cast<size_t>(i)] - sigma) - e2 / prev;
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace jumplab
