#include "jumplab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jumplab/errors.hpp"
#include "parallel.hpp"

namespace jumplab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kChunk = 4096;  // fixed chunk size keeps reductions deterministic

double clamp_open01(double x) {
    const double lo = std::nextafter(0.0, 1.0);
    const double hi = std::nextafter(1.0, 0.0);
    return std::min(hi, std::max(lo, x));
}

}  // namespace

JumpSampler::JumpSampler(const JumpMeasure& measure, const Grid& grid) {
    for (const Atom& a : measure.atoms) {
        atom_total_ += a.mass;
        atom_cum_.push_back(atom_total_);
        atom_loc_.push_back(a.location);
    }
    h_ = grid.h;
    const int n = grid.n_interior;
    vals_.resize(static_cast<size_t>(n) + 2);
    vals_.front() = measure.density_left;
    vals_.back() = measure.density_right;
    for (int i = 1; i <= n; ++i) vals_[static_cast<size_t>(i)] = measure.density[static_cast<size_t>(i) - 1];
    cdf_.resize(vals_.size(), 0.0);
    for (size_t i = 1; i < vals_.size(); ++i) {
        cdf_[i] = cdf_[i - 1] + 0.5 * h_ * (vals_[i - 1] + vals_[i]);
    }
    cdf_total_ = cdf_.back();
    if (atom_total_ <= 0.0 && cdf_total_ <= 0.0) {
        throw InvalidMeasure("jump sampler: measure has no mass");
    }
}

double JumpSampler::sample(PathRng& rng) const {
    const double u = rng.uniform();  // total mass is 1
    if (u < atom_total_ || cdf_total_ <= 0.0) {
        const auto it = std::upper_bound(atom_cum_.begin(), atom_cum_.end(), u);
        const size_t idx = static_cast<size_t>(it - atom_cum_.begin());
        return atom_loc_[std::min(idx, atom_loc_.size() - 1)];
    }
    // density branch: map the remaining probability onto the raw CDF
    const double density_mass = 1.0 - atom_total_;
    double r = (u - atom_total_) / density_mass * cdf_total_;
    if (r >= cdf_total_) r = std::nextafter(cdf_total_, 0.0);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), r);
    size_t j = static_cast<size_t>(it - cdf_.begin());
    if (j == 0) j = 1;
    if (j >= cdf_.size()) j = cdf_.size() - 1;
    const size_t a = j - 1;
    const double ra = r - cdf_[a];
    const double fa = vals_[a];
    const double fb = vals_[j];
    const double slope = (fb - fa) / h_;
    double t;
    if (std::abs(slope) * h_ < 1e-12 * std::max(fa, fb)) {
        t = ra / fa;
    } else {
        const double disc = fa * fa + 2.0 * slope * ra;
        t = (std::sqrt(std::max(disc, 0.0)) - fa) / slope;
    }
    t = std::min(std::max(t, 0.0), h_);
    return clamp_open01(static_cast<double>(a) * h_ + t);
}

double sample_jump(const JumpMeasure& measure, const Grid& grid, PathRng& rng) {
    return JumpSampler(measure, grid).sample(rng);
}

namespace {

/// Piecewise-linear rate lookup on the uniform grid; hot path.
struct RateTable {
    const double* v;  // full nodes 0..n+1
    int n;
    double inv_h;

    explicit RateTable(const std::vector<double>& full, double h)
        : v(full.data()), n(static_cast<int>(full.size()) - 2), inv_h(1.0 / h) {}

    double operator()(double x) const {
        const double t = x * inv_h;
        int j = static_cast<int>(t);
        if (j > n) j = n;
        const double theta = t - j;
        return (1.0 - theta) * v[j] + theta * v[j + 1];
    }
};

std::vector<double> full_values(const RateField& rate) {
    std::vector<double> full;
    full.reserve(rate.values.size() + 2);
    full.push_back(rate.v_left);
    full.insert(full.end(), rate.values.begin(), rate.values.end());
    full.push_back(rate.v_right);
    return full;
}

struct PathKernel {
    RateTable rate;
    const JumpSampler* sampler;
    double max_v;
    double gamma;
    PathConfig config;

    PathOutcome run(double x0, PathRng& rng) const {
        PathOutcome out;
        const double dt = config.dt;
        const double horizon = config.horizon;
        const bool fk = config.fk_lambda.has_value();
        const double fk_lambda = fk ? *config.fk_lambda : 0.0;
        const double cand_rate = (config.jumps && gamma > 0.0) ? gamma * max_v : 0.0;

        double x = x0;
        double t = 0.0;
        double logw = 0.0;
        double next_cand = cand_rate > 0.0 ? rng.exponential() / cand_rate : kInf;

        while (t < horizon) {
            double t_end = t + dt;
            if (t_end > horizon) t_end = horizon;
            bool candidate = false;
            if (next_cand <= t_end) {
                t_end = next_cand;
                candidate = true;
            }
            const double step = t_end - t;
            if (step > 0.0) {
                const double xn = x + std::sqrt(step) * rng.normal();
                if (fk) logw += step * (fk_lambda - gamma * rate(x));
                if (xn <= 0.0 || xn >= 1.0) {
                    out.exited = true;
                    out.exit_time = t_end;
                    out.fk_weight = std::exp(logw);
                    return out;
                }
                if (config.bridge_correction) {
                    // absorption probability of the Brownian bridge at either wall
                    const double a0 = 2.0 * x * xn;
                    const double a1 = 2.0 * (1.0 - x) * (1.0 - xn);
                    const double p0 = (a0 < 700.0 * step) ? std::exp(-a0 / step) : 0.0;
                    const double p1 = (a1 < 700.0 * step) ? std::exp(-a1 / step) : 0.0;
                    if (p0 > 0.0 || p1 > 0.0) {
                        const double p = p0 + p1 - p0 * p1;
                        if (rng.uniform() < p) {
                            out.exited = true;
                            out.exit_time = t_end;
                            out.fk_weight = std::exp(logw);
                            return out;
                        }
                    }
                }
                x = xn;
            }
            t = t_end;
            if (candidate) {
                if (rng.uniform() * max_v < rate(x)) {
                    x = sampler->sample(rng);
                    ++out.n_jumps;
                    if (config.record_jump_times) config.record_jump_times->push_back(t);
                }
                next_cand = t + rng.exponential() / cand_rate;
            }
        }
        out.exited = false;
        out.exit_time = horizon;
        out.fk_weight = std::exp(logw);
        return out;
    }
};

void validate_path_inputs(double x0, double dt, double horizon) {
    if (!(x0 > 0.0) || !(x0 < 1.0)) throw InvalidArgument("x0 must lie in (0,1)");
    if (!(dt > 0.0) || dt > 1e-3) throw InvalidArgument("dt must lie in (0, 1e-3]");
    if (!(horizon >= 0.0)) throw InvalidArgument("horizon must be nonnegative");
}

}  // namespace

PathOutcome simulate_path(double x0, double gamma, const RateField& rate,
                          const JumpMeasure& measure, const Grid& grid,
                          const PathConfig& config, PathRng& rng) {
    validate_path_inputs(x0, config.dt, config.horizon);
    const std::vector<double> full = full_values(rate);
    const JumpSampler sampler(measure, grid);
    const PathKernel kernel{RateTable(full, grid.h), &sampler, rate.max_v, gamma, config};
    return kernel.run(x0, rng);
}

MCEstimate survival_probability(const StartDistribution& start, double gamma,
                                const RateField& rate, const JumpMeasure& measure,
                                const Grid& grid, double t, long n_paths, double dt,
                                uint64_t seed, bool bridge_correction) {
    if (n_paths < 1000) throw InvalidArgument("survival estimate needs n_paths >= 1000");
    if (!start.from_measure) validate_path_inputs(start.x0, dt, t);
    else validate_path_inputs(0.5, dt, t);

    PathConfig config;
    config.horizon = t;
    config.dt = dt;
    config.bridge_correction = bridge_correction;
    const std::vector<double> full = full_values(rate);
    const JumpSampler sampler(measure, grid);
    const PathKernel kernel{RateTable(full, grid.h), &sampler, rate.max_v, gamma, config};

    const long n_chunks = (n_paths + kChunk - 1) / kChunk;
    std::vector<long> survived(static_cast<size_t>(n_chunks), 0);
    detail::for_each_chunk(n_paths, kChunk, [&](long c, long begin, long end) {
        long alive = 0;
        for (long i = begin; i < end; ++i) {
            PathRng rng(seed, static_cast<uint64_t>(i));
            const double x0 = start.from_measure ? sampler.sample(rng) : start.x0;
            if (!kernel.run(x0, rng).exited) ++alive;
        }
        survived[static_cast<size_t>(c)] = alive;
    });
    long alive = 0;
    for (long s : survived) alive += s;

    MCEstimate est;
    est.n_paths = n_paths;
    est.seed = seed;
    est.value = static_cast<double>(alive) / static_cast<double>(n_paths);
    est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(n_paths));
    return est;
}

DecayRateEstimate decay_rate_estimate(const StartDistribution& start, double gamma,
                                      const RateField& rate, const JumpMeasure& measure,
                                      const Grid& grid, std::span<const double> t_list,
                                      long n_paths, double dt, uint64_t seed) {
    if (t_list.size() < 3) throw InvalidArgument("decay rate needs >= 3 time points");
    for (size_t i = 0; i < t_list.size(); ++i) {
        if (!(t_list[i] > 0.0)) throw InvalidArgument("decay rate needs positive times");
        if (i > 0 && !(t_list[i] > t_list[i - 1])) {
            throw InvalidArgument("decay rate needs increasing times");
        }
    }
    if (n_paths < 1000) throw InvalidArgument("decay rate needs n_paths >= 1000");

    PathConfig config;
    config.horizon = t_list.back();
    config.dt = dt;
    const std::vector<double> full = full_values(rate);
    const JumpSampler sampler(measure, grid);
    const PathKernel kernel{RateTable(full, grid.h), &sampler, rate.max_v, gamma, config};

    const size_t n_t = t_list.size();
    const long n_chunks = (n_paths + kChunk - 1) / kChunk;
    std::vector<std::vector<long>> counts(static_cast<size_t>(n_chunks),
                                          std::vector<long>(n_t, 0));
    detail::for_each_chunk(n_paths, kChunk, [&](long c, long begin, long end) {
        auto& local = counts[static_cast<size_t>(c)];
        for (long i = begin; i < end; ++i) {
            PathRng rng(seed, static_cast<uint64_t>(i));
            const double x0 = start.from_measure ? sampler.sample(rng) : start.x0;
            const PathOutcome out = kernel.run(x0, rng);
            const double tau = out.exited ? out.exit_time : kInf;
            for (size_t j = 0; j < n_t; ++j) {
                if (tau > t_list[j]) ++local[j];
            }
        }
    });

    DecayRateEstimate est;
    for (size_t j = 0; j < n_t; ++j) {
        long alive = 0;
        for (long c = 0; c < n_chunks; ++c) alive += counts[static_cast<size_t>(c)][j];
        if (alive == 0) {
            est.truncated = true;  // drop unusable tail points
            break;
        }
        const double p = static_cast<double>(alive) / static_cast<double>(n_paths);
        est.times.push_back(t_list[j]);
        est.survival.push_back(p);
        est.std_error.push_back(std::sqrt(p * (1.0 - p) / static_cast<double>(n_paths)));
    }
    if (est.times.size() < 2) {
        throw NonConvergence("decay rate: fewer than 2 usable time points");
    }

    const LogLinearRate fit = log_linear_rate(est.times, est.survival);
    est.rate = fit.rate;
    est.r_squared = fit.r_squared;
    return est;
}

LogLinearRate log_linear_rate(std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size() || times.size() < 2) {
        throw InvalidArgument("log-linear rate needs >= 2 points");
    }
    const size_t m = times.size();
    double mx = 0.0, my = 0.0;
    for (size_t j = 0; j < m; ++j) {
        if (!(values[j] > 0.0)) throw InvalidArgument("log-linear rate needs positive values");
        mx += times[j];
        my += std::log(values[j]);
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t j = 0; j < m; ++j) {
        const double dx = times[j] - mx;
        const double dy = std::log(values[j]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    double ss_res = 0.0;
    for (size_t j = 0; j < m; ++j) {
        const double r = (std::log(values[j]) - my) - slope * (times[j] - mx);
        ss_res += r * r;
    }
    LogLinearRate out;
    out.rate = -slope;
    out.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    return out;
}

MCEstimate fk_estimate_u(double x0, double lambda, double gamma, const RateField& rate,
                         const Grid& grid, long n_paths, double dt, uint64_t seed,
                         double horizon) {
    if (n_paths < 1000) throw InvalidArgument("fk estimate needs n_paths >= 1000");
    validate_path_inputs(x0, dt, horizon);

    PathConfig config;
    config.horizon = horizon;
    config.dt = dt;
    config.jumps = false;
    config.fk_lambda = lambda;
    const std::vector<double> full = full_values(rate);
    // kernel requires a sampler; jumps are off, so any valid measure works
    const Grid tiny = Grid::uniform(3);
    const JumpMeasure unused = build_jump_measure(JumpPreset::uniform(), tiny);
    const JumpSampler sampler(unused, tiny);
    const PathKernel kernel{RateTable(full, grid.h), &sampler, rate.max_v, gamma, config};

    const long n_chunks = (n_paths + kChunk - 1) / kChunk;
    std::vector<double> sums(static_cast<size_t>(n_chunks), 0.0);
    std::vector<double> sums2(static_cast<size_t>(n_chunks), 0.0);
    detail::for_each_chunk(n_paths, kChunk, [&](long c, long begin, long end) {
        double s = 0.0, s2 = 0.0;
        for (long i = begin; i < end; ++i) {
            PathRng rng(seed, static_cast<uint64_t>(i));
            const double w = kernel.run(x0, rng).fk_weight;
            s += w;
            s2 += w * w;
        }
        sums[static_cast<size_t>(c)] = s;
        sums2[static_cast<size_t>(c)] = s2;
    });
    double s = 0.0, s2 = 0.0;
    for (long c = 0; c < n_chunks; ++c) {
        s += sums[static_cast<size_t>(c)];
        s2 += sums2[static_cast<size_t>(c)];
    }
    MCEstimate est;
    est.n_paths = n_paths;
    est.seed = seed;
    const double n = static_cast<double>(n_paths);
    est.value = s / n;
    const double var = std::max(0.0, s2 / n - est.value * est.value);
    est.std_error = std::sqrt(var / n);
    return est;
}

}  // namespace jumplab
