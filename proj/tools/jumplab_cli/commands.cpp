#include "jumplab_cli/commands.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "jumplab/asymptotics.hpp"
#include "jumplab/bvp.hpp"
#include "jumplab/degenerate.hpp"
#include "jumplab/eigensolve.hpp"
#include "jumplab/errors.hpp"
#include "jumplab/montecarlo.hpp"
#include "jumplab_cli/jsonout.hpp"

namespace jumplab::cli {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInfDev = std::numeric_limits<double>::infinity();

void write_columns(JsonWriter& w, const std::vector<std::string>& cols) {
    w.key("columns").begin_array();
    for (const auto& c : cols) w.value(c);
    w.end_array();
}

GridPolicy policy_for(const RunConfig& cfg) {
    GridPolicy p = GridPolicy::sweep_default();
    p.min_n = cfg.grid_n;
    return p;
}

double interpolate(const ScalarField& f, const Grid& grid, double x) {
    if (x <= 0.0) return f.left;
    if (x >= 1.0) return f.right;
    const double t = x / grid.h;
    int j = static_cast<int>(t);
    if (j > grid.n_interior) j = grid.n_interior;
    const double theta = t - j;
    return (1.0 - theta) * f.value(j) + theta * f.value(j + 1);
}

void append_sweep_rows(JsonWriter& w, const SweepResult& sweep) {
    for (const SweepPoint& p : sweep.points) {
        w.begin_object();
        w.kv("gamma", p.gamma);
        w.kv("h", p.h);
        w.kv("lambda0", p.lambda0);
        w.kv("lambda0_richardson", p.lambda0_richardson);
        w.kv("scaled", p.scaled);
        w.kv("k", static_cast<long>(p.k));
        w.kv("method", jumplab::to_string(p.method));
        w.kv("iterations", static_cast<long>(p.iterations));
        w.kv("residual", p.residual);
        w.end_object();
    }
}

void append_sweep_fit(JsonWriter& w, const SweepResult& sweep) {
    w.key("fit").begin_object();
    w.kv("exponent", sweep.fit_exponent);
    w.kv("constant", sweep.fit_constant);
    w.kv("max_log_residual", sweep.fit_residual);
    w.kv("corrected_intercept", sweep.extrapolated_intercept);
    w.kv("limit_constant", sweep.limit_constant);
    w.end_object();
}

const std::vector<std::string> kSweepColumns = {
    "gamma", "h", "lambda0", "lambda0_richardson", "scaled",
    "k",     "method", "iterations", "residual"};

CommandOutput finish(JsonWriter& w, std::vector<std::string> failures) {
    CommandOutput out;
    out.json_text = w.str();
    out.json_text += '\n';
    out.csv_text = csv_from_result_json(out.json_text);
    out.assert_failures = std::move(failures);
    return out;
}

double require_single_gamma(const RunConfig& cfg, const char* cmd) {
    if (cfg.gammas.size() != 1) {
        throw InvalidArgument(std::string(cmd) + " expects exactly one gamma");
    }
    return cfg.gammas.front();
}

uint64_t require_seed(const RunConfig& cfg) {
    if (!cfg.mc.seed) {
        throw InvalidArgument("no seed given: set mc.seed in the config or pass --seed");
    }
    return *cfg.mc.seed;
}

CommandOutput cmd_solve(const RunConfig& cfg, bool asserts) {
    const double gamma = require_single_gamma(cfg, "solve");
    const Grid grid = Grid::uniform(cfg.grid_n);
    const RateField rate = build_rate_field(cfg.rate, grid);
    const JumpMeasure measure = build_jump_measure(cfg.jump, grid);

    std::vector<EigenMethod> methods;
    const bool degenerate = rate.min_v <= 0.0 || rate.degenerate_ok;
    if (cfg.method == EigenMethod::both && !degenerate) {
        methods = {EigenMethod::fixed_point, EigenMethod::matrix};
    } else {
        methods = {degenerate ? EigenMethod::matrix : cfg.method};
        if (methods[0] == EigenMethod::both) methods[0] = EigenMethod::fixed_point;
    }

    std::vector<EigenResult> results;
    for (EigenMethod m : methods) {
        results.push_back(principal_eigenvalue(gamma, rate, measure, grid, m));
    }
    double agreement = kNaN;
    if (results.size() == 2) {
        agreement = std::abs(results[0].lambda0 - results[1].lambda0) / results[0].lambda0;
    }

    JsonWriter w;
    w.begin_object();
    w.kv("command", "solve");
    write_columns(w, {"gamma", "h", "lambda0", "lambda_star", "method", "iterations",
                      "residual", "agreement"});
    w.key("rows").begin_array();
    for (const EigenResult& r : results) {
        w.begin_object();
        w.kv("gamma", gamma);
        w.kv("h", grid.h);
        w.kv("lambda0", r.lambda0);
        w.kv("lambda_star", r.lambda_star);
        w.kv("method", jumplab::to_string(r.method));
        w.kv("iterations", static_cast<long>(r.iterations));
        w.kv("residual", r.residual);
        w.kv("agreement", agreement);  // null unless both routes ran
        w.end_object();
    }
    w.end_array();
    w.kv("rate", cfg.rate.name());
    w.kv("jump", cfg.jump.name());
    w.end_object();

    std::vector<std::string> failures;
    if (asserts) {
        for (const EigenResult& r : results) {
            if (!(r.lambda0 > 0.0) || !(r.lambda0 <= r.lambda_star)) {
                failures.push_back("eigenvalue guard 0 < lambda0 <= lambda_star failed");
            }
            if (!(r.residual <= 1e-6)) failures.push_back("residual above 1e-6");
        }
        if (results.size() == 2 && !(agreement <= 1e-6)) {
            failures.push_back("route agreement above 1e-6");
        }
    }
    return finish(w, std::move(failures));
}

CommandOutput cmd_sweep(const RunConfig& cfg, bool asserts) {
    if (cfg.gammas.empty()) throw InvalidArgument("gammas must be nonempty");
    const GridPolicy policy = policy_for(cfg);

    std::vector<EigenMethod> methods;
    if (cfg.method == EigenMethod::both) {
        methods = {EigenMethod::fixed_point, EigenMethod::matrix};
    } else {
        methods = {cfg.method};
    }

    std::vector<SweepResult> sweeps;
    for (EigenMethod m : methods) {
        sweeps.push_back(sweep_gamma(cfg.gammas, cfg.rate, cfg.jump, policy, m));
    }

    JsonWriter w;
    w.begin_object();
    w.kv("command", "sweep");
    write_columns(w, kSweepColumns);
    w.key("rows").begin_array();
    for (const SweepResult& s : sweeps) append_sweep_rows(w, s);
    w.end_array();
    w.key("fits").begin_array();
    for (const SweepResult& s : sweeps) {
        w.begin_object();
        w.kv("method", jumplab::to_string(s.points.front().method));
        append_sweep_fit(w, s);
        w.end_object();
    }
    w.end_array();
    w.kv("rate", cfg.rate.name());
    w.kv("jump", cfg.jump.name());
    w.kv("k", static_cast<long>(sweeps.front().k));
    w.end_object();

    std::vector<std::string> failures;
    if (asserts) {
        for (const SweepResult& s : sweeps) {
            for (double lam : s.lambda0s) {
                if (!(lam > 0.0) || !std::isfinite(lam)) {
                    failures.push_back("nonpositive or non-finite lambda0 in sweep");
                    break;
                }
            }
            if (std::isfinite(s.limit_constant) && s.points.size() >= 3 &&
                !(std::abs(s.extrapolated_intercept - s.limit_constant) <=
                  0.05 * std::abs(s.limit_constant))) {
                failures.push_back("corrected intercept misses the limit constant by over 5%");
            }
        }
        if (sweeps.size() == 2) {
            for (size_t i = 0; i < sweeps[0].lambda0s.size(); ++i) {
                const double rel = std::abs(sweeps[0].lambda0s[i] - sweeps[1].lambda0s[i]) /
                                   sweeps[0].lambda0s[i];
                if (!(rel <= 1e-6)) {
                    failures.push_back("route agreement above 1e-6 in sweep");
                    break;
                }
            }
        }
    }
    return finish(w, std::move(failures));
}

CommandOutput cmd_constant(const RunConfig& cfg, bool asserts) {
    const Grid grid = Grid::uniform(cfg.grid_n);
    const RateField rate = build_rate_field(cfg.rate, grid);
    const JumpMeasure measure = build_jump_measure(cfg.jump, grid);
    const int k = cfg.k_override.value_or(measure.k_vanish);
    const double value = theoretical_limit_constant(k, rate, measure, grid);

    JsonWriter w;
    w.begin_object();
    w.kv("command", "constant");
    write_columns(w, {"k", "limit_constant"});
    w.key("rows").begin_array();
    w.begin_object();
    w.kv("k", static_cast<long>(k));
    w.kv("limit_constant", value);
    w.end_object();
    w.end_array();
    w.kv("rate", cfg.rate.name());
    w.kv("jump", cfg.jump.name());
    w.end_object();

    std::vector<std::string> failures;
    if (asserts && !(std::isfinite(value))) failures.push_back("limit constant is not finite");
    return finish(w, std::move(failures));
}

CommandOutput cmd_diagnose(const RunConfig& cfg, bool asserts) {
    if (cfg.gammas.empty()) throw InvalidArgument("gammas must be nonempty");
    const GridPolicy policy = policy_for(cfg);

    JsonWriter w;
    w.begin_object();
    w.kv("command", "diagnose");
    write_columns(w, {"gamma", "lambda0", "v_limit_sup", "normal_deriv_err_left",
                      "normal_deriv_err_right", "sublinearity_ratio"});
    w.key("rows").begin_array();
    std::vector<LimitDiagnostics> diags;
    for (double gamma : cfg.gammas) {
        const Grid grid = Grid::uniform(policy.n_for(gamma));
        const RateField rate = build_rate_field(cfg.rate, grid);
        const JumpMeasure measure = build_jump_measure(cfg.jump, grid);
        const LimitDiagnostics d =
            limit_diagnostics(gamma, rate, measure, grid, cfg.diagnose_epsilon);
        diags.push_back(d);
        w.begin_object();
        w.kv("gamma", gamma);
        w.kv("lambda0", d.lambda0);
        w.kv("v_limit_sup", d.v_limit_sup);
        w.kv("normal_deriv_err_left", d.normal_deriv_err_left);
        w.kv("normal_deriv_err_right", d.normal_deriv_err_right);
        w.kv("sublinearity_ratio", d.sublinearity_ratio);
        w.end_object();
    }
    w.end_array();
    w.kv("epsilon", cfg.diagnose_epsilon);
    w.kv("rate", cfg.rate.name());
    w.kv("jump", cfg.jump.name());
    w.end_object();

    std::vector<std::string> failures;
    if (asserts) {
        for (size_t i = 0; i < diags.size(); ++i) {
            if (cfg.gammas[i] >= 1000.0 && !(diags[i].v_limit_sup < 0.1)) {
                failures.push_back("v limit sup >= 0.1");
            }
            if (cfg.gammas[i] >= 5000.0 && !(diags[i].normal_deriv_err_left < 0.03 &&
                                             diags[i].normal_deriv_err_right < 0.03)) {
                failures.push_back("normal derivative error >= 0.03");
            }
        }
        for (size_t i = 1; i < diags.size(); ++i) {
            if (!(diags[i].sublinearity_ratio < diags[i - 1].sublinearity_ratio)) {
                failures.push_back("sublinearity ratio not strictly decreasing");
            }
        }
    }
    return finish(w, std::move(failures));
}

CommandOutput cmd_simulate(const RunConfig& cfg, bool asserts) {
    const double gamma = require_single_gamma(cfg, "simulate");
    const uint64_t seed = require_seed(cfg);
    if (cfg.mc.t_list.empty()) throw InvalidArgument("simulate needs a nonempty mc.t_list");

    const Grid grid = Grid::uniform(cfg.grid_n);
    const RateField rate = build_rate_field(cfg.rate, grid);
    const JumpMeasure measure = build_jump_measure(cfg.jump, grid);
    const StartDistribution start = cfg.mc.x0 ? StartDistribution::fixed(*cfg.mc.x0)
                                              : StartDistribution::from_mu();

    double decay_rate = kNaN, r_squared = kNaN;
    std::vector<double> times, survival, std_error;
    bool truncated = false;
    if (cfg.mc.t_list.size() >= 3) {
        const DecayRateEstimate d = decay_rate_estimate(start, gamma, rate, measure, grid,
                                                        cfg.mc.t_list, cfg.mc.n_paths,
                                                        cfg.mc.dt, seed);
        decay_rate = d.rate;
        r_squared = d.r_squared;
        times = d.times;
        survival = d.survival;
        std_error = d.std_error;
        truncated = d.truncated;
    } else {
        for (double t : cfg.mc.t_list) {
            const MCEstimate e = survival_probability(start, gamma, rate, measure, grid, t,
                                                      cfg.mc.n_paths, cfg.mc.dt, seed);
            times.push_back(t);
            survival.push_back(e.value);
            std_error.push_back(e.std_error);
        }
    }

    JsonWriter w;
    w.begin_object();
    w.kv("command", "simulate");
    write_columns(w, {"t", "survival", "std_error", "rate", "r_squared"});
    w.key("rows").begin_array();
    for (size_t i = 0; i < times.size(); ++i) {
        w.begin_object();
        w.kv("t", times[i]);
        w.kv("survival", survival[i]);
        w.kv("std_error", std_error[i]);
        w.kv("rate", decay_rate);
        w.kv("r_squared", r_squared);
        w.end_object();
    }
    w.end_array();
    w.kv("gamma", gamma);
    w.kv("n_paths", cfg.mc.n_paths);
    w.kv("dt", cfg.mc.dt);
    w.kv("seed", static_cast<unsigned long long>(seed));
    w.kv("start", cfg.mc.x0 ? format_double(*cfg.mc.x0) : std::string("mu"));
    w.kv("truncated", truncated);
    w.end_object();

    std::vector<std::string> failures;
    if (asserts) {
        if (truncated) failures.push_back("t_list truncated: zero survivors at some t");
        if (std::isfinite(r_squared) && !(r_squared > 0.9)) {
            failures.push_back("decay fit r_squared below 0.9");
        }
    }
    return finish(w, std::move(failures));
}

CommandOutput cmd_fk_check(const RunConfig& cfg, bool asserts) {
    const double gamma = require_single_gamma(cfg, "fk-check");
    const uint64_t seed = require_seed(cfg);
    if (cfg.mc.probe_points.empty()) throw InvalidArgument("fk-check needs probe points");

    const Grid grid = Grid::uniform(cfg.grid_n);
    const RateField rate = build_rate_field(cfg.rate, grid);
    const double lambda = cfg.mc.lambda;
    const ScalarField u = solve_u(lambda, gamma, rate, grid);

    JsonWriter w;
    w.begin_object();
    w.kv("command", "fk-check");
    write_columns(w, {"x0", "fk_estimate", "std_error", "bvp_u", "deviation_over_se"});
    w.key("rows").begin_array();
    std::vector<double> devs;
    for (double x0 : cfg.mc.probe_points) {
        const MCEstimate e = fk_estimate_u(x0, lambda, gamma, rate, grid, cfg.mc.n_paths,
                                           cfg.mc.dt, seed, cfg.mc.horizon);
        const double ref = interpolate(u, grid, x0);
        const double diff = std::abs(e.value - ref);
        // zero-variance estimators (weight identically 1) are compared directly
        const double dev = e.std_error > 0.0 ? diff / e.std_error
                                             : (diff <= 1e-9 ? 0.0 : kInfDev);
        devs.push_back(dev);
        w.begin_object();
        w.kv("x0", x0);
        w.kv("fk_estimate", e.value);
        w.kv("std_error", e.std_error);
        w.kv("bvp_u", ref);
        w.kv("deviation_over_se", dev);
        w.end_object();
    }
    w.end_array();
    w.kv("gamma", gamma);
    w.kv("lambda", lambda);
    w.kv("n_paths", cfg.mc.n_paths);
    w.kv("dt", cfg.mc.dt);
    w.kv("seed", static_cast<unsigned long long>(seed));
    w.end_object();

    std::vector<std::string> failures;
    if (asserts) {
        for (double d : devs) {
            if (!(d <= 3.0)) {
                failures.push_back("fk estimate more than 3 standard errors from the solver");
                break;
            }
        }
    }
    return finish(w, std::move(failures));
}

CommandOutput cmd_degenerate(const RunConfig& cfg, bool asserts) {
    if (cfg.gammas.empty()) throw InvalidArgument("gammas must be nonempty");
    GridPolicy policy = GridPolicy::degenerate_sweep();
    policy.min_n = cfg.grid_n;
    const DegenerateReport report = degenerate_sweep(cfg.gammas, policy);

    const double sg = cfg.supersolution_gamma;
    const double se = cfg.supersolution_epsilon;
    const Grid check_grid = Grid::uniform(policy.n_for(sg));
    const double c_lower = se * std::cbrt(sg);
    const double c_upper = se * std::pow(sg, 2.0 / 3.0);
    const SupersolutionCheck lower =
        supersolution_check(sg, c_lower, ResidualSign::nonnegative, check_grid);
    const SupersolutionCheck upper =
        supersolution_check(sg, c_upper, ResidualSign::nonpositive, check_grid);

    JsonWriter w;
    w.begin_object();
    w.kv("command", "degenerate");
    write_columns(w, kSweepColumns);
    w.key("rows").begin_array();
    append_sweep_rows(w, report.sweep);
    w.end_array();
    append_sweep_fit(w, report.sweep);
    w.key("local_slopes").begin_array();
    if (report.sweep.points.size() >= 3) {
        const PowerLawFit fit = fit_power_law(report.sweep.gammas, report.sweep.lambda0s);
        for (double s : fit.local_slopes) w.value(s);
    }
    w.end_array();
    w.kv("slopes_in_window", report.slopes_in_window);
    w.kv("lambda_increasing", report.lambda_increasing);
    w.kv("c1_hat", report.c1_hat);
    w.kv("c2_hat", report.c2_hat);
    w.key("supersolution").begin_object();
    w.kv("gamma", sg);
    w.kv("epsilon", se);
    w.key("lower").begin_object();
    w.kv("c", c_lower);
    w.kv("min_residual", lower.residual);
    w.kv("holds", lower.holds);
    w.end_object();
    w.key("upper").begin_object();
    w.kv("c", c_upper);
    w.kv("max_residual", upper.residual);
    w.kv("holds", upper.holds);
    w.end_object();
    w.end_object();
    // the fitted exponent is exploratory output: the true growth rate is an
    // open problem, only the [1/3, 2/3] window is proven
    w.kv("exponent_note",
         "fitted exponent is exploratory; proven bounds are gamma^(1/3) and gamma^(2/3)");
    w.end_object();

    std::vector<std::string> failures;
    if (asserts) {
        if (!report.slopes_in_window) failures.push_back("local slopes leave the proven window");
        if (!report.lambda_increasing) failures.push_back("lambda0 not increasing in gamma");
        if (!(report.c1_hat > 0.0) || !(report.c2_hat > 0.0)) {
            failures.push_back("bound certificate not positive");
        }
        if (!lower.holds) failures.push_back("lower supersolution check failed");
    }
    return finish(w, std::move(failures));
}

}  // namespace

Command command_from_string(const std::string& name) {
    if (name == "solve") return Command::solve;
    if (name == "sweep") return Command::sweep;
    if (name == "constant") return Command::constant;
    if (name == "diagnose") return Command::diagnose;
    if (name == "simulate") return Command::simulate;
    if (name == "fk-check") return Command::fk_check;
    if (name == "degenerate") return Command::degenerate;
    throw InvalidArgument("unknown command '" + name +
                          "' (valid: solve, sweep, constant, diagnose, simulate, fk-check, "
                          "degenerate)");
}

std::string to_string(Command cmd) {
    switch (cmd) {
        case Command::solve: return "solve";
        case Command::sweep: return "sweep";
        case Command::constant: return "constant";
        case Command::diagnose: return "diagnose";
        case Command::simulate: return "simulate";
        case Command::fk_check: return "fk-check";
        case Command::degenerate: return "degenerate";
    }
    return "?";
}

CommandOutput run_command(Command cmd, const RunConfig& config, bool run_asserts) {
    switch (cmd) {
        case Command::solve: return cmd_solve(config, run_asserts);
        case Command::sweep: return cmd_sweep(config, run_asserts);
        case Command::constant: return cmd_constant(config, run_asserts);
        case Command::diagnose: return cmd_diagnose(config, run_asserts);
        case Command::simulate: return cmd_simulate(config, run_asserts);
        case Command::fk_check: return cmd_fk_check(config, run_asserts);
        case Command::degenerate: return cmd_degenerate(config, run_asserts);
    }
    throw InvalidArgument("unknown command");
}

std::string csv_from_result_json(const std::string& json_text) {
    const json doc = json::parse(json_text);
    if (!doc.contains("columns") || !doc.contains("rows")) {
        throw InvalidArgument("result document lacks columns/rows");
    }
    std::string out;
    const auto& cols = doc["columns"];
    for (size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i].get<std::string>();
    }
    out += '\n';
    for (const auto& row : doc["rows"]) {
        for (size_t i = 0; i < cols.size(); ++i) {
            if (i) out += ',';
            const auto& cell = row.at(cols[i].get<std::string>());
            if (cell.is_null()) {
                // empty field
            } else if (cell.is_string()) {
                out += cell.get<std::string>();
            } else if (cell.is_number_integer()) {
                out += std::to_string(cell.get<long long>());
            } else if (cell.is_boolean()) {
                out += cell.get<bool>() ? "true" : "false";
            } else {
                out += format_double(cell.get<double>());
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace jumplab::cli
