#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigmoidnn/density.hpp"
#include "sigmoidnn/moments.hpp"
#include "sigmoidnn/sigmoids.hpp"

namespace sigmoidnn {

enum class Command { Moments, StrangFix, Eval, Converge, Voronovskaja, Bound };

std::string to_string(Command c);
/// Throws ConfigError for an unknown name.
Command parse_command(const std::string& name);

struct Tolerances {
    double moment = 1e-13;      // certified tail for algebraic/absolute moments
    double strang_fix = 1e-6;   // Strang-Fix and moment-vanishing threshold
    double quadrature = 1e-8;   // Fourier quadrature absolute error

    bool operator==(const Tolerances&) const = default;
};

struct RunConfig {
    std::string activation = "logistic";
    Interval interval{0, 3};
    double delta = 0.25;
    int m = 2;
    std::optional<double> beta;
    std::optional<double> alpha;
    std::optional<DecayConstants> decay_constants;
    double kernel_scale = 1.0;
    std::vector<std::string> functions;
    std::vector<int> n_list;
    std::vector<int> s_list;
    std::vector<double> x_list;
    std::vector<int> nu_list;
    int k_max = 3;
    int nu_max = 2;
    int grid_resolution = 241;
    Tolerances tolerances;
    std::string output_dir = "out";

    bool operator==(const RunConfig&) const;
};

nlohmann::json to_json(const DecayConstants& dc);
DecayConstants decay_constants_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RunConfig& config);
/// Strict parse: unknown keys and type mismatches raise ConfigError.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Re-validates every module precondition the command relies on.
/// Throws ConfigError for malformed input and HypothesisViolation when the
/// decay parameters cannot support the requested theory.
void validate(const RunConfig& config, Command command);

/// Builds the kernel described by the config (fitting decay constants unless supplied).
DensityKernel build_kernel(const RunConfig& config);

}  // namespace sigmoidnn
