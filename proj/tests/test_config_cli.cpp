#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sigmoidnn/commands.hpp"
#include "sigmoidnn/config.hpp"
#include "sigmoidnn/errors.hpp"

using namespace sigmoidnn;
namespace fs = std::filesystem;

namespace {

RunConfig small_config() {
    RunConfig c;
    c.functions = {"sin"};
    c.n_list = {20, 40};
    c.s_list = {0, 1};
    c.x_list = {0.5, 1.5};
    c.nu_list = {0, 2};
    c.grid_resolution = 61;
    return c;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("sigmoidnn_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Config, JsonRoundTrip) {
    auto c = small_config();
    c.beta = 7.0;
    c.decay_constants = make_sigmoid("logistic", 2).decay();
    const auto back = config_from_json(nlohmann::json::parse(to_json(c).dump()));
    EXPECT_EQ(back, c);
}

TEST(Config, RejectsUnknownKeysAndBadTypes) {
    auto j = to_json(small_config());
    j["colour"] = "blue";
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = to_json(small_config());
    j["tolerances"]["extra"] = 1.0;
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = to_json(small_config());
    j["m"] = "two";
    EXPECT_THROW(config_from_json(j), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
    EXPECT_THROW(parse_command("plot"), ConfigError);
}

TEST(Config, ValidationPerCommand) {
    auto c = small_config();
    EXPECT_NO_THROW(validate(c, Command::Converge));
    c.activation = "relu";
    EXPECT_THROW(validate(c, Command::Moments), ConfigError);
    c = small_config();
    c.n_list = {40, 20};
    EXPECT_THROW(validate(c, Command::Converge), ConfigError);
    c = small_config();
    c.nu_max = 3;
    EXPECT_THROW(validate(c, Command::StrangFix), ConfigError);
    c = small_config();
    c.x_list = {0.1};
    EXPECT_THROW(validate(c, Command::Voronovskaja), ConfigError);
    c = small_config();
    c.beta = 2.5;
    EXPECT_THROW(validate(c, Command::Converge), HypothesisViolation);
}

TEST(Commands, ExitCodes) {
    std::ostringstream log;
    CommandOptions opts;
    opts.quiet = true;
    opts.out_dir = scratch("exit").string();
    auto c = small_config();
    EXPECT_EQ(run_command(Command::Eval, c, opts, log), kExitOk);
    EXPECT_TRUE(fs::exists(output_path(Command::Eval, c, opts)));

    c.activation = "relu";
    EXPECT_EQ(run_command(Command::Eval, c, opts, log), kExitConfigError);

    c = small_config();
    c.beta = 2.5;
    EXPECT_EQ(run_command(Command::Converge, c, opts, log), kExitFlagged);

    const auto blocker = scratch("blocked");
    std::ofstream(blocker.string()) << "file";
    opts.out_dir = (blocker / "sub").string();
    EXPECT_EQ(run_command(Command::Eval, small_config(), opts, log), kExitIoError);
    fs::remove(blocker);
}

TEST(Commands, StrangFixFailureStillExitsZero) {
    std::ostringstream log;
    CommandOptions opts;
    opts.quiet = true;
    opts.out_dir = scratch("sf").string();
    auto c = small_config();
    c.kernel_scale = 2.0;
    EXPECT_EQ(run_command(Command::StrangFix, c, opts, log), kExitOk);
    const auto csv = slurp(output_path(Command::StrangFix, c, opts));
    EXPECT_NE(csv.find("overall"), std::string::npos);
    const auto pos = csv.find(",overall,");
    ASSERT_NE(pos, std::string::npos);
    const auto line = csv.substr(pos, csv.find('\n', pos) - pos);
    EXPECT_EQ(line.back(), '0') << line;
}

TEST(Commands, ConvergeIsDeterministic) {
    std::ostringstream log;
    CommandOptions opts;
    opts.quiet = true;
    opts.seed = 17;
    const auto c = small_config();
    opts.out_dir = scratch("det_a").string();
    ASSERT_EQ(run_command(Command::Converge, c, opts, log), kExitOk);
    const auto a = slurp(output_path(Command::Converge, c, opts));
    opts.out_dir = scratch("det_b").string();
    ASSERT_EQ(run_command(Command::Converge, c, opts, log), kExitOk);
    const auto b = slurp(output_path(Command::Converge, c, opts));
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.substr(0, a.find('\n')), "activation,function,s,n,sup_error,empirical_order,theoretical_bound");
}

TEST(Commands, EveryCommandWritesHeaderedCsv) {
    std::ostringstream log;
    CommandOptions opts;
    opts.quiet = true;
    opts.out_dir = scratch("all").string();
    const auto c = small_config();
    for (auto cmd : {Command::Moments, Command::StrangFix, Command::Eval, Command::Converge, Command::Voronovskaja,
                     Command::Bound}) {
        EXPECT_EQ(run_command(cmd, c, opts, log), kExitOk) << to_string(cmd) << "\n" << log.str();
        const auto csv = slurp(output_path(cmd, c, opts));
        EXPECT_EQ(csv.rfind("activation", 0) == 0 || csv.rfind("function", 0) == 0, true) << to_string(cmd);
        EXPECT_GT(std::count(csv.begin(), csv.end(), '\n'), 1) << to_string(cmd);
    }
}
