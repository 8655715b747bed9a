#include "aoi/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "aoi/error.hpp"

namespace aoi {

void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"command", c.command},
                       {"lambda", c.lambda},
                       {"p", c.p},
                       {"mu", c.mu},
                       {"b1", c.b1},
                       {"b2", c.b2},
                       {"svc1", c.svc1},
                       {"svc2", c.svc2},
                       {"packets", c.packets},
                       {"seed", c.seed},
                       {"warmup", c.warmup},
                       {"out", c.out},
                       {"verbosity", c.verbosity},
                       {"trace", c.trace},
                       {"invert_priority", c.invert_priority},
                       {"p_values", c.p_values},
                       {"rho_values", c.rho_values},
                       {"seeds", c.seeds},
                       {"threads", c.threads},
                       {"cdf_times", c.cdf_times}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
    if (!j.is_object()) throw ValidationError("config: expected a JSON object");
    nlohmann::json defaults;
    to_json(defaults, c);
    for (const auto& [key, value] : j.items()) {
        if (!defaults.contains(key)) throw ValidationError("config: unknown key '" + key + "'");
        (void)value;
    }
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) j.at(key).get_to(field);
        };
        get("command", c.command);
        get("lambda", c.lambda);
        get("p", c.p);
        get("mu", c.mu);
        get("b1", c.b1);
        get("b2", c.b2);
        get("svc1", c.svc1);
        get("svc2", c.svc2);
        get("packets", c.packets);
        get("seed", c.seed);
        get("warmup", c.warmup);
        get("out", c.out);
        get("verbosity", c.verbosity);
        get("trace", c.trace);
        get("invert_priority", c.invert_priority);
        get("p_values", c.p_values);
        get("rho_values", c.rho_values);
        get("seeds", c.seeds);
        get("threads", c.threads);
        get("cdf_times", c.cdf_times);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    static const std::set<std::string> commands{"analyze", "simulate", "sweep", "validate"};
    if (!commands.count(c.command)) throw ValidationError("config: unknown command '" + c.command + "'");
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config " + path + ": " + e.what());
    }
    RunConfig c;
    from_json(j, c);
    return c;
}

void save_config(const RunConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write config " + path);
    out << nlohmann::json(config).dump(2) << '\n';
}

std::string output_dir(const RunConfig& config) {
    if (!config.out.empty()) return config.out;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return "aoi_output";
}

SystemParams params_of(const RunConfig& config) {
    return SystemParams(config.lambda, config.p, config.mu, ServiceDistribution::from_spec(config.svc1, config.b1),
                        ServiceDistribution::from_spec(config.svc2, config.b2));
}

SweepSpec sweep_spec_of(const RunConfig& config) {
    SweepSpec spec;
    spec.p_values = config.p_values;
    spec.rho_values = config.rho_values;
    if (!(config.mu > 0.0)) throw ValidationError("mu must be positive");
    spec.b = 1.0 / config.mu;
    spec.b1 = config.b1;
    spec.b2 = config.b2;
    spec.svc1 = config.svc1;
    spec.svc2 = config.svc2;
    spec.n_packets = config.packets;
    spec.seeds = config.seeds;
    spec.warmup_fraction = config.warmup;
    spec.output_dir = output_dir(config);
    spec.threads = config.threads;
    return spec;
}

}  // namespace aoi
