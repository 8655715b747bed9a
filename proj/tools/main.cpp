#include <iostream>
#include <utility>

#include "CLI11.hpp"

#include "aoi/cli.hpp"
#include "aoi/config.hpp"
#include "aoi/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Age of information for a two-hop tandem with priority at node 2"};
    app.require_subcommand(1);

    aoi::RunConfig flags;
    std::string config_path;
    std::string save_path;

    // Each flag remembers the config key it overrides.
    std::vector<std::pair<CLI::Option*, std::string>> overrides;
    auto opt = [&](const char* key, CLI::Option* o) {
        overrides.emplace_back(o, key);
        return o;
    };
    app.add_option("--config", config_path, "JSON config file; flags override its values");
    app.add_option("--save-config", save_path, "write the effective config as JSON and continue");
    opt("lambda", app.add_option("--lambda", flags.lambda, "total generation rate"));
    opt("p", app.add_option("--p", flags.p, "probability that an update is a priority packet"));
    opt("mu", app.add_option("--mu", flags.mu, "node-1 service rate"));
    opt("b1", app.add_option("--b1", flags.b1, "mean node-2 service time of priority packets"));
    opt("b2", app.add_option("--b2", flags.b2, "mean node-2 service time of non-priority packets"));
    opt("svc1", app.add_option("--svc1", flags.svc1, "priority service law: exp, det, erlang:k, gamma:shape, hyperexponential:scv"));
    opt("svc2", app.add_option("--svc2", flags.svc2, "non-priority service law"));
    opt("packets", app.add_option("--packets", flags.packets, "departures per simulation run"));
    opt("seed", app.add_option("--seed", flags.seed, "simulation seed"));
    opt("warmup", app.add_option("--warmup", flags.warmup, "fraction of departures discarded as transient"));
    opt("out", app.add_option("--out", flags.out, "output directory (default: $AOI_OUTPUT_DIR or aoi_output)"));
    opt("p_values", app.add_option("--p-values", flags.p_values, "sweep: p grid")->delimiter(','));
    opt("rho_values", app.add_option("--rho-values", flags.rho_values, "sweep: rho grid")->delimiter(','));
    opt("seeds", app.add_option("--seeds", flags.seeds, "sweep: one replication per seed")->delimiter(','));
    opt("threads", app.add_option("--threads", flags.threads, "sweep: worker threads (0 = all cores)"));
    opt("cdf_times", app.add_option("--cdf-times", flags.cdf_times, "analyze: times at which to invert the CDFs")->delimiter(','));
    opt("trace", app.add_flag("--trace", flags.trace, "simulate: write the event trace to <out>/trace.csv"));
    opt("invert_priority", app.add_flag("--invert-priority", flags.invert_priority, "negative control: serve non-priority first"));
    opt("verbosity", app.add_flag("-v,--verbose", flags.verbosity, "more output"));

    const std::pair<const char*, const char*> commands[] = {
        {"analyze", "closed-form and transform means, bound labels, optional CDFs"},
        {"simulate", "one discrete-event run"},
        {"sweep", "(p, rho) grid: analytics vs simulation, CSV panels"},
        {"validate", "oracle and simulator property checks at 10^4 packets"}};
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : aoi::kExitInvalid;
    }

    aoi::RunConfig config;
    try {
        if (!config_path.empty()) config = aoi::load_config(config_path);
    } catch (const aoi::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return aoi::kExitInvalid;
    }
    // Copy every flag given on the command line over the file values.
    nlohmann::json merged = config;
    const nlohmann::json given = flags;
    for (const auto& [option, key] : overrides)
        if (option->count() > 0) merged[key] = given.at(key);
    merged["command"] = app.get_subcommands().front()->get_name();
    try {
        merged.get_to(config);
        if (!save_path.empty()) aoi::save_config(config, save_path);
    } catch (const aoi::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return aoi::kExitInvalid;
    }
    return aoi::run_command(config, std::cout, std::cerr);
}
