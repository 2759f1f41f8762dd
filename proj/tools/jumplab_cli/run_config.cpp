#include "jumplab_cli/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "jumplab/errors.hpp"

namespace jumplab::cli {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    std::string unknown;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            if (!unknown.empty()) unknown += ", ";
            unknown += it.key();
        }
    }
    if (!unknown.empty()) {
        throw InvalidArgument("unknown key(s) in " + where + ": " + unknown);
    }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw InvalidArgument("missing required key '" + key + "' in " + where);
    if (!obj[key].is_number()) throw InvalidArgument("'" + key + "' in " + where + " must be a number");
    return obj[key].get<double>();
}

RatePreset parse_rate(const json& node) {
    if (node.is_string()) {
        const std::string name = node.get<std::string>();
        if (name == "constant") return RatePreset::constant();
        if (name == "degenerate") return RatePreset::degenerate();
        throw InvalidArgument("invalid rate preset '" + name +
                              "' (valid: constant, linear, polynomial, degenerate)");
    }
    if (!node.is_object()) throw InvalidArgument("rate must be a preset name or an object");
    reject_unknown_keys(node, {"preset", "slope", "coeffs"}, "rate");
    if (!node.contains("preset")) throw InvalidArgument("missing required key 'preset' in rate");
    const std::string name = node["preset"].get<std::string>();
    if (name == "constant") return RatePreset::constant();
    if (name == "degenerate") return RatePreset::degenerate();
    if (name == "linear") {
        return RatePreset::linear(require_number(node, "slope", "rate"));
    }
    if (name == "polynomial") {
        if (!node.contains("coeffs") || !node["coeffs"].is_array()) {
            throw InvalidArgument("polynomial rate preset needs a 'coeffs' array");
        }
        return RatePreset::polynomial(node["coeffs"].get<std::vector<double>>());
    }
    throw InvalidArgument("invalid rate preset '" + name +
                          "' (valid: constant, linear, polynomial, degenerate)");
}

JumpPreset parse_jump(const json& node) {
    if (node.is_string()) {
        const std::string name = node.get<std::string>();
        if (name == "uniform") return JumpPreset::uniform();
        throw InvalidArgument("invalid jump preset '" + name +
                              "' (valid: uniform, poly, atom, mixture)");
    }
    if (!node.is_object()) throw InvalidArgument("jump must be a preset name or an object");
    reject_unknown_keys(node, {"preset", "k", "location", "components"}, "jump");
    if (!node.contains("preset")) throw InvalidArgument("missing required key 'preset' in jump");
    const std::string name = node["preset"].get<std::string>();
    if (name == "uniform") return JumpPreset::uniform();
    if (name == "poly") {
        return JumpPreset::poly(static_cast<int>(require_number(node, "k", "jump")));
    }
    if (name == "atom") {
        const double loc = require_number(node, "location", "jump");
        if (!(loc > 0.0) || !(loc < 1.0)) {
            throw InvalidArgument("atom location must lie in (0,1)");
        }
        return JumpPreset::atom(loc);
    }
    if (name == "mixture") {
        if (!node.contains("components") || !node["components"].is_array()) {
            throw InvalidArgument("mixture jump preset needs a 'components' array");
        }
        std::vector<JumpPreset::Component> comps;
        for (const auto& c : node["components"]) {
            if (!c.is_object()) throw InvalidArgument("mixture components must be objects");
            json inner = c;
            double mass = require_number(c, "mass", "mixture component");
            inner.erase("mass");
            comps.push_back({parse_jump(inner), mass});
        }
        return JumpPreset::mixture(std::move(comps));
    }
    throw InvalidArgument("invalid jump preset '" + name +
                          "' (valid: uniform, poly, atom, mixture)");
}

}  // namespace

RunConfig parse_config_text(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config is not well-formed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidArgument("config root must be a JSON object");
    reject_unknown_keys(doc,
                        {"grid", "rate", "jump", "gammas", "k", "method", "mc", "output",
                         "epsilon", "supersolution"},
                        "config");

    RunConfig cfg;
    if (doc.contains("grid")) {
        reject_unknown_keys(doc["grid"], {"n"}, "grid");
        cfg.grid_n = static_cast<int>(require_number(doc["grid"], "n", "grid"));
    }
    if (!doc.contains("rate")) throw InvalidArgument("missing required key 'rate'");
    cfg.rate = parse_rate(doc["rate"]);
    if (!doc.contains("jump")) throw InvalidArgument("missing required key 'jump'");
    cfg.jump = parse_jump(doc["jump"]);
    if (!doc.contains("gammas")) throw InvalidArgument("missing required key 'gammas'");
    if (!doc["gammas"].is_array()) throw InvalidArgument("'gammas' must be an array");
    cfg.gammas = doc["gammas"].get<std::vector<double>>();

    if (doc.contains("k")) cfg.k_override = static_cast<int>(doc["k"].get<double>());
    if (doc.contains("method")) {
        cfg.method = eigen_method_from_string(doc["method"].get<std::string>());
    }
    if (doc.contains("epsilon")) cfg.diagnose_epsilon = doc["epsilon"].get<double>();
    if (doc.contains("supersolution")) {
        const json& s = doc["supersolution"];
        reject_unknown_keys(s, {"gamma", "epsilon"}, "supersolution");
        if (s.contains("gamma")) cfg.supersolution_gamma = s["gamma"].get<double>();
        if (s.contains("epsilon")) cfg.supersolution_epsilon = s["epsilon"].get<double>();
    }

    if (doc.contains("mc")) {
        const json& mc = doc["mc"];
        reject_unknown_keys(
            mc, {"n_paths", "dt", "t_list", "seed", "x0", "lambda", "probe_points", "horizon"},
            "mc");
        if (mc.contains("n_paths")) cfg.mc.n_paths = mc["n_paths"].get<long>();
        if (mc.contains("dt")) cfg.mc.dt = mc["dt"].get<double>();
        if (mc.contains("t_list")) cfg.mc.t_list = mc["t_list"].get<std::vector<double>>();
        if (mc.contains("seed")) cfg.mc.seed = mc["seed"].get<uint64_t>();
        if (mc.contains("x0")) {
            if (mc["x0"].is_string()) {
                if (mc["x0"].get<std::string>() != "mu") {
                    throw InvalidArgument("mc.x0 must be a number in (0,1) or \"mu\"");
                }
            } else {
                cfg.mc.x0 = mc["x0"].get<double>();
            }
        }
        if (mc.contains("lambda")) cfg.mc.lambda = mc["lambda"].get<double>();
        if (mc.contains("probe_points")) {
            cfg.mc.probe_points = mc["probe_points"].get<std::vector<double>>();
        }
        if (mc.contains("horizon")) cfg.mc.horizon = mc["horizon"].get<double>();
    }

    if (doc.contains("output")) {
        const json& out = doc["output"];
        reject_unknown_keys(out, {"path", "format"}, "output");
        if (out.contains("path")) cfg.output.path = out["path"].get<std::string>();
        if (out.contains("format")) {
            cfg.output.format = out["format"].get<std::string>();
            if (cfg.output.format != "csv" && cfg.output.format != "json") {
                throw InvalidArgument("output.format must be 'csv' or 'json'");
            }
        }
    }
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace jumplab::cli
