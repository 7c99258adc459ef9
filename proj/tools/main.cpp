// sigmoidnn: reproducible studies of sigmoidal NN operators.
//
//   sigmoidnn <moments|strangfix|eval|converge|voronovskaja|bound> --config run.json [--out dir] [--seed N] [--quiet]

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "sigmoidnn/commands.hpp"
#include "sigmoidnn/errors.hpp"

int main(int argc, char** argv) {
    using namespace sigmoidnn;

    CLI::App app{"Neural-network operators activated by sigmoidal functions"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool quiet = false;

    for (const char* name : {"moments", "strangfix", "eval", "converge", "voronovskaja", "bound"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
        sub->add_option("--seed", seed, "seed for sup-estimation grid jitter (0 = no jitter)");
        sub->add_flag("--quiet", quiet, "suppress progress output");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfigError;
    }

    const auto* chosen = app.get_subcommands().front();
    CommandOptions options;
    options.seed = seed;
    options.quiet = quiet;
    if (!out_dir.empty()) options.out_dir = out_dir;

    RunConfig config;
    try {
        config = load_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }

    std::ostringstream log;
    const int rc = run_command(parse_command(chosen->get_name()), config, options, log);
    if (!quiet || rc != kExitOk) std::cerr << log.str();
    return rc;
}
