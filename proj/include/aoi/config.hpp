#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "aoi/experiments.hpp"
#include "aoi/params.hpp"

namespace aoi {

/// Everything a CLI invocation needs. Serialized as a flat JSON object whose
/// keys are the member names.
struct RunConfig {
    std::string command = "analyze";  ///< analyze | simulate | sweep | validate
    double lambda = 0.5;
    double p = 0.5;
    double mu = 1.0;
    double b1 = 1.0;
    double b2 = 1.0;
    std::string svc1 = "exponential";
    std::string svc2 = "exponential";
    std::uint64_t packets = 100000;
    std::uint64_t seed = 1;
    double warmup = 0.1;
    std::string out;  ///< empty: AOI_OUTPUT_DIR or "aoi_output" where files are needed
    int verbosity = 0;
    bool trace = false;           ///< simulate: write the event trace
    bool invert_priority = false; ///< negative control for validate/simulate
    // sweep
    std::vector<double> p_values{0.1, 0.3, 0.5, 0.7, 0.9};
    std::vector<double> rho_values{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<std::uint64_t> seeds{1, 2, 3};
    unsigned threads = 0;
    // analyze
    std::vector<double> cdf_times;

    bool operator==(const RunConfig&) const = default;
};

void to_json(nlohmann::json& j, const RunConfig& c);
/// Missing keys keep their defaults; unknown keys are a ValidationError.
void from_json(const nlohmann::json& j, RunConfig& c);

RunConfig load_config(const std::string& path);
void save_config(const RunConfig& config, const std::string& path);

inline constexpr const char* kOutputDirEnv = "AOI_OUTPUT_DIR";
/// config.out, else $AOI_OUTPUT_DIR, else "aoi_output".
std::string output_dir(const RunConfig& config);

/// Throws DomainError / StabilityError like SystemParams itself.
SystemParams params_of(const RunConfig& config);
SweepSpec sweep_spec_of(const RunConfig& config);

}  // namespace aoi
