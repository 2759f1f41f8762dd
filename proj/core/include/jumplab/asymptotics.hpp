#pragma once

#include <span>
#include <vector>

#include "jumplab/eigensolve.hpp"
#include "jumplab/grid.hpp"
#include "jumplab/jump_measure.hpp"
#include "jumplab/rate_field.hpp"

namespace jumplab {

/// Grid sizing for sweeps: n grows with gamma so the boundary layer
/// (width ~ gamma^{-1/2}, or gamma^{-1/3} in the degenerate case) stays
/// resolved.
struct GridPolicy {
    int min_n = 2000;
    double nodes_per_sqrt_gamma = 40.0;
    double nodes_per_cbrt_gamma = 0.0;

    int n_for(double gamma) const;

    static GridPolicy sweep_default() { return {2000, 40.0, 0.0}; }
    static GridPolicy degenerate_sweep() { return {2000, 0.0, 100.0}; }
};

/// Limit constant of gamma^{(k-1)/2} lambda0 on the unit interval: endpoint
/// sum of V^{-(k+1)/2} times the k-th density derivative (inward-signed for
/// odd k), over 2^{(k+1)/2} times the integral of 1/V against mu.
/// Requires a nondegenerate rate field and k equal to the measure's declared
/// vanishing order.
double theoretical_limit_constant(int k, const RateField& rate, const JumpMeasure& measure,
                                  const Grid& grid);

struct SweepPoint {
    double gamma = 0.0;
    double h = 0.0;
    double lambda0 = 0.0;            // on the policy grid
    double lambda0_richardson = 0.0;
    double scaled = 0.0;             // gamma^{(k-1)/2} * lambda0_richardson
    int k = 0;
    EigenMethod method = EigenMethod::fixed_point;
    int iterations = 0;
    double residual = 0.0;
};

struct PowerLawFit {
    double exponent = 0.0;
    double constant = 0.0;
    double max_log_residual = 0.0;
    std::vector<double> local_slopes;
};

struct SweepResult {
    std::vector<double> gammas;
    std::vector<double> lambda0s;  // Richardson-extrapolated
    std::vector<double> scaled;
    int k = 0;
    double fit_exponent = 0.0;
    double fit_constant = 0.0;
    double fit_residual = 0.0;
    double limit_constant = 0.0;           // NaN when out of hypothesis
    double extrapolated_intercept = 0.0;   // NaN when under 3 points
    std::vector<SweepPoint> points;

    bool empty() const { return points.empty(); }
};

/// Eigenvalue sweep over increasing gamma with Richardson extrapolation and
/// the gamma^{(k-1)/2} scaling taken from the measure's vanishing order.
/// Solver errors are rethrown annotated with the offending gamma.
SweepResult sweep_gamma(std::span<const double> gammas, const RatePreset& rate,
                        const JumpPreset& jump, const GridPolicy& policy,
                        EigenMethod method);

/// Least squares of log(lambda) on log(gamma). Requires >= 3 positive points.
PowerLawFit fit_power_law(std::span<const double> gammas, std::span<const double> lambdas);

/// Least squares of scaled_i = c + a * gamma_i^{-1/2}; returns the intercept c.
double fit_corrected_limit(std::span<const double> gammas, std::span<const double> scaled);
double fit_corrected_limit(const SweepResult& sweep);

struct ExpDecayFit {
    double c_hat = 0.0;
    double r_squared = 0.0;
};

/// Regress log(lambda) on sqrt(gamma); c_hat is minus the slope.
/// Requires >= 4 positive points.
ExpDecayFit exponential_decay_fit(std::span<const double> gammas,
                                  std::span<const double> lambdas);

struct LimitDiagnostics {
    double lambda0 = 0.0;
    double v_limit_sup = 0.0;        // sup over [eps, 1-eps] of |gamma v - 1/V|
    double normal_deriv_err_left = 0.0;   // |gamma^{-1/2} du_inward + sqrt(2 V(0))|
    double normal_deriv_err_right = 0.0;
    double sublinearity_ratio = 0.0;      // lambda0 / gamma
};

LimitDiagnostics limit_diagnostics(double gamma, const RateField& rate,
                                   const JumpMeasure& measure, const Grid& grid,
                                   double interior_margin = 0.1);

}  // namespace jumplab
