#include "sigmoidnn/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "sigmoidnn/analysis.hpp"
#include "sigmoidnn/errors.hpp"

namespace sigmoidnn {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <typename T>
void read(const json& j, const char* key, std::optional<T>& out) {
    if (!j.contains(key)) return;
    T v{};
    read(j, key, v);
    out = v;
}

const std::set<std::string> kTopKeys = {
    "activation", "interval", "delta", "m", "beta", "alpha", "decay_constants", "kernel_scale",
    "functions", "n_list", "s_list", "x_list", "nu_list", "k_max", "nu_max", "grid_resolution",
    "tolerances", "output_dir"};

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::Moments: return "moments";
        case Command::StrangFix: return "strangfix";
        case Command::Eval: return "eval";
        case Command::Converge: return "converge";
        case Command::Voronovskaja: return "voronovskaja";
        case Command::Bound: return "bound";
    }
    return "?";
}

Command parse_command(const std::string& name) {
    for (auto c : {Command::Moments, Command::StrangFix, Command::Eval, Command::Converge, Command::Voronovskaja,
                   Command::Bound}) {
        if (to_string(c) == name) return c;
    }
    throw ConfigError("unknown subcommand '" + name + "'");
}

bool RunConfig::operator==(const RunConfig& o) const {
    auto same_dc = [](const std::optional<DecayConstants>& x, const std::optional<DecayConstants>& y) {
        if (x.has_value() != y.has_value()) return false;
        if (!x) return true;
        return x->alpha == y->alpha && x->beta == y->beta && x->K == y->K && x->C == y->C;
    };
    return activation == o.activation && interval.a == o.interval.a && interval.b == o.interval.b &&
           delta == o.delta && m == o.m && beta == o.beta && alpha == o.alpha &&
           same_dc(decay_constants, o.decay_constants) && kernel_scale == o.kernel_scale &&
           functions == o.functions && n_list == o.n_list && s_list == o.s_list && x_list == o.x_list &&
           nu_list == o.nu_list && k_max == o.k_max && nu_max == o.nu_max && grid_resolution == o.grid_resolution &&
           tolerances == o.tolerances && output_dir == o.output_dir;
}

json to_json(const DecayConstants& dc) { return {{"alpha", dc.alpha}, {"beta", dc.beta}, {"K", dc.K}, {"C", dc.C}}; }

DecayConstants decay_constants_from_json(const json& j) {
    reject_unknown(j, {"alpha", "beta", "K", "C"}, "decay_constants");
    DecayConstants dc;
    read(j, "alpha", dc.alpha);
    read(j, "beta", dc.beta);
    read(j, "K", dc.K);
    read(j, "C", dc.C);
    if (dc.K.size() != dc.C.size() || dc.K.empty()) throw ConfigError("decay_constants: K and C must match in length");
    return dc;
}

json to_json(const RunConfig& c) {
    json j = {{"activation", c.activation},
              {"interval", {c.interval.a, c.interval.b}},
              {"delta", c.delta},
              {"m", c.m},
              {"kernel_scale", c.kernel_scale},
              {"functions", c.functions},
              {"n_list", c.n_list},
              {"s_list", c.s_list},
              {"x_list", c.x_list},
              {"nu_list", c.nu_list},
              {"k_max", c.k_max},
              {"nu_max", c.nu_max},
              {"grid_resolution", c.grid_resolution},
              {"tolerances",
               {{"moment", c.tolerances.moment},
                {"strang_fix", c.tolerances.strang_fix},
                {"quadrature", c.tolerances.quadrature}}},
              {"output_dir", c.output_dir}};
    if (c.beta) j["beta"] = *c.beta;
    if (c.alpha) j["alpha"] = *c.alpha;
    if (c.decay_constants) j["decay_constants"] = to_json(*c.decay_constants);
    return j;
}

RunConfig config_from_json(const json& j) {
    reject_unknown(j, kTopKeys, "config");
    RunConfig c;
    read(j, "activation", c.activation);
    if (j.contains("interval")) {
        std::vector<int> iv;
        read(j, "interval", iv);
        if (iv.size() != 2) throw ConfigError("interval must be [a, b]");
        c.interval = {iv[0], iv[1]};
    }
    read(j, "delta", c.delta);
    read(j, "m", c.m);
    read(j, "beta", c.beta);
    read(j, "alpha", c.alpha);
    if (j.contains("decay_constants")) c.decay_constants = decay_constants_from_json(j.at("decay_constants"));
    read(j, "kernel_scale", c.kernel_scale);
    read(j, "functions", c.functions);
    read(j, "n_list", c.n_list);
    read(j, "s_list", c.s_list);
    read(j, "x_list", c.x_list);
    read(j, "nu_list", c.nu_list);
    read(j, "k_max", c.k_max);
    read(j, "nu_max", c.nu_max);
    read(j, "grid_resolution", c.grid_resolution);
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        reject_unknown(t, {"moment", "strang_fix", "quadrature"}, "tolerances");
        read(t, "moment", c.tolerances.moment);
        read(t, "strang_fix", c.tolerances.strang_fix);
        read(t, "quadrature", c.tolerances.quadrature);
    }
    read(j, "output_dir", c.output_dir);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return config_from_json(j);
}

void validate(const RunConfig& c, Command command) {
    const auto ids = catalog_ids();
    if (std::find(ids.begin(), ids.end(), c.activation) == ids.end()) {
        throw ConfigError("unknown activation '" + c.activation + "'");
    }
    if (c.interval.a >= c.interval.b) throw ConfigError("interval must satisfy a < b");
    if (!(c.delta > 0.0) || !(c.interval.a + c.delta < c.interval.b - c.delta)) {
        throw ConfigError("delta must be positive with a + delta < b - delta");
    }
    if (c.m < 2) throw ConfigError("m must be at least 2");
    if (!(c.kernel_scale > 0.0) || !std::isfinite(c.kernel_scale)) throw ConfigError("kernel_scale must be positive");
    if (c.grid_resolution < 2) throw ConfigError("grid_resolution must be at least 2");
    if (!(c.tolerances.moment > 0.0) || !(c.tolerances.strang_fix > 0.0) || !(c.tolerances.quadrature > 0.0)) {
        throw ConfigError("tolerances must be positive");
    }
    for (int n : c.n_list) {
        if (n < 1) throw ConfigError("n_list entries must be positive");
    }
    for (int s : c.s_list) {
        if (s < 0 || s > c.m) throw ConfigError("s_list entries must lie in [0, m]");
    }
    for (int nu : c.nu_list) {
        if (nu < 0) throw ConfigError("nu_list entries must be non-negative");
    }
    const auto known = test_function_ids();
    for (const auto& f : c.functions) {
        if (std::find(known.begin(), known.end(), f) == known.end()) {
            throw ConfigError("unknown function id '" + f + "'");
        }
    }
    if (c.decay_constants && c.decay_constants->max_order() != c.m) {
        throw ConfigError("decay_constants must list orders 0..m");
    }

    auto need_functions = [&] {
        if (c.functions.empty()) throw ConfigError("functions: at least one function id is required");
    };
    auto need_n = [&](std::size_t min) {
        if (c.n_list.size() < min) throw ConfigError("n_list needs at least " + std::to_string(min) + " entries");
    };

    switch (command) {
        case Command::Moments:
            need_n(1);
            if (c.nu_list.empty()) throw ConfigError("nu_list must not be empty");
            if (c.x_list.empty()) throw ConfigError("x_list must not be empty");
            break;
        case Command::StrangFix:
            if (c.k_max < 1) throw ConfigError("k_max must be at least 1");
            if (c.nu_max < 0 || c.nu_max > c.m) throw ConfigError("nu_max must lie in [0, m]");
            break;
        case Command::Eval:
            need_functions();
            need_n(1);
            break;
        case Command::Converge:
            need_functions();
            need_n(2);
            if (c.s_list.empty()) throw ConfigError("s_list must not be empty");
            if (!std::is_sorted(c.n_list.begin(), c.n_list.end()) ||
                std::adjacent_find(c.n_list.begin(), c.n_list.end()) != c.n_list.end()) {
                throw ConfigError("n_list must be strictly increasing");
            }
            break;
        case Command::Voronovskaja:
            need_functions();
            need_n(2);
            if (c.x_list.empty()) throw ConfigError("x_list must not be empty");
            for (double x : c.x_list) {
                if (!in_guarantee_region(c.interval, c.delta, x)) throw ConfigError("x_list entries must lie in I_delta");
            }
            break;
        case Command::Bound:
            need_functions();
            need_n(1);
            if (c.s_list.empty()) throw ConfigError("s_list must not be empty");
            break;
    }

    // Decay regime: the derivative tail must at least satisfy beta > m + 1.
    const double beta = c.decay_constants ? c.decay_constants->beta : c.beta.value_or(2.0 * c.m + 2.0);
    const double alpha = c.decay_constants ? c.decay_constants->alpha : c.alpha.value_or(2.0 * c.m + 2.0);
    if (!(beta > c.m + 1.0)) {
        throw HypothesisViolation("beta = " + std::to_string(beta) + " must exceed m + 1 = " + std::to_string(c.m + 1));
    }
    if (!(alpha > 0.0)) throw HypothesisViolation("alpha must be positive");
}

DensityKernel build_kernel(const RunConfig& c) {
    auto sig = make_sigmoid(c.activation, c.m, c.beta, c.alpha);
    if (c.decay_constants) sig = sig.with_decay(*c.decay_constants);
    return DensityKernel(std::move(sig), c.kernel_scale);
}

}  // namespace sigmoidnn
