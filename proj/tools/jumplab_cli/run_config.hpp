#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jumplab/eigensolve.hpp"
#include "jumplab/jump_measure.hpp"
#include "jumplab/rate_field.hpp"

namespace jumplab::cli {

struct McConfig {
    long n_paths = 100000;
    double dt = 1e-4;
    std::vector<double> t_list;
    std::optional<uint64_t> seed;
    std::optional<double> x0;  // absent: start from mu
    double lambda = 0.0;       // weight parameter for fk-check
    std::vector<double> probe_points = {0.25, 0.5, 0.75};
    double horizon = 50.0;     // fk truncation horizon
};

struct OutputConfig {
    std::string path;          // empty: stdout
    std::string format = "json";  // csv | json
};

struct RunConfig {
    int grid_n = 2000;
    RatePreset rate;
    JumpPreset jump;
    std::vector<double> gammas;
    std::optional<int> k_override;
    EigenMethod method = EigenMethod::fixed_point;
    McConfig mc;
    OutputConfig output;
    double diagnose_epsilon = 0.1;
    double supersolution_gamma = 1e6;
    double supersolution_epsilon = 0.01;
};

/// Parse and validate a JSON config file. Unknown keys, unknown presets and
/// missing required keys raise InvalidArgument with a descriptive message.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& json_text);

}  // namespace jumplab::cli
