#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jumplab/grid.hpp"
#include "jumplab/jump_measure.hpp"
#include "jumplab/rate_field.hpp"
#include "jumplab/rng.hpp"

namespace jumplab {

struct PathOutcome {
    bool exited = false;
    double exit_time = 0.0;  // horizon when not exited
    long n_jumps = 0;
    double fk_weight = 1.0;  // exp(int (lambda - gamma V) ds) when requested
};

struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long n_paths = 0;
    uint64_t seed = 0;
};

/// Draw from a jump measure: atoms by mass, density by inverse CDF of its
/// piecewise-linear interpolant.
class JumpSampler {
  public:
    JumpSampler(const JumpMeasure& measure, const Grid& grid);
    double sample(PathRng& rng) const;

  private:
    std::vector<double> atom_cum_;
    std::vector<double> atom_loc_;
    double atom_total_ = 0.0;
    std::vector<double> cdf_;   // cumulative density integral at full nodes
    std::vector<double> vals_;  // density at full nodes
    double h_ = 0.0;
    double cdf_total_ = 0.0;
};

double sample_jump(const JumpMeasure& measure, const Grid& grid, PathRng& rng);

struct PathConfig {
    double horizon = 1.0;
    double dt = 1e-4;
    bool bridge_correction = true;
    bool jumps = true;
    std::optional<double> fk_lambda;          // accumulate the exponential functional
    std::vector<double>* record_jump_times = nullptr;  // testing hook
};

/// Euler path of the jump-diffusion: Brownian increments of variance dt,
/// jump clock thinned against the dominating rate gamma*max V, exit by sign
/// crossing plus the Brownian-bridge absorption probability
/// exp(-2 d1 d2 / dt) for each boundary.
PathOutcome simulate_path(double x0, double gamma, const RateField& rate,
                          const JumpMeasure& measure, const Grid& grid,
                          const PathConfig& config, PathRng& rng);

struct StartDistribution {
    bool from_measure = true;
    double x0 = 0.5;

    static StartDistribution fixed(double x) { return {false, x}; }
    static StartDistribution from_mu() { return {true, 0.0}; }
};

/// Fraction of paths alive at time t, binomial standard error. Per-path
/// streams are derived from (seed, path index); reruns are bit-identical.
MCEstimate survival_probability(const StartDistribution& start, double gamma,
                                const RateField& rate, const JumpMeasure& measure,
                                const Grid& grid, double t, long n_paths, double dt,
                                uint64_t seed, bool bridge_correction = true);

struct DecayRateEstimate {
    double rate = 0.0;
    double r_squared = 0.0;
    std::vector<double> times;      // possibly truncated at zero-survivor entries
    std::vector<double> survival;
    std::vector<double> std_error;
    bool truncated = false;
};

struct LogLinearRate {
    double rate = 0.0;  // minus the slope of log(values) on times
    double r_squared = 0.0;
};

/// Regression backing decay_rate_estimate; values must be positive.
LogLinearRate log_linear_rate(std::span<const double> times, std::span<const double> values);

/// Regress log survival on t over a common set of paths run to max(t_list).
DecayRateEstimate decay_rate_estimate(const StartDistribution& start, double gamma,
                                      const RateField& rate, const JumpMeasure& measure,
                                      const Grid& grid, std::span<const double> t_list,
                                      long n_paths, double dt, uint64_t seed);

/// Feynman-Kac estimate of u_{lambda,gamma}(x0): killed Brownian paths (no
/// jumps) carrying the weight exp(int_0^tau (lambda - gamma V(X_s)) ds).
MCEstimate fk_estimate_u(double x0, double lambda, double gamma, const RateField& rate,
                         const Grid& grid, long n_paths, double dt, uint64_t seed,
                         double horizon = 50.0);

}  // namespace jumplab
