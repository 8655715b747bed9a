#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"

#include "aoi/cli.hpp"
#include "aoi/config.hpp"
#include "aoi/error.hpp"

using namespace aoi;
namespace fs = std::filesystem;

TEST_CASE("config round-trips through JSON") {
    RunConfig c;
    c.command = "sweep";
    c.lambda = 0.3;
    c.svc2 = "erlang:3";
    c.p_values = {0.2};
    c.seeds = {7, 8};
    c.cdf_times = {1.0, 2.0};
    const fs::path path = fs::temp_directory_path() / "aoi_cfg_roundtrip.json";
    save_config(c, path.string());
    CHECK(load_config(path.string()) == c);

    nlohmann::json j = c;
    CHECK(j.get<RunConfig>() == c);
}

TEST_CASE("config rejects unknown keys and commands") {
    CHECK_THROWS_AS(nlohmann::json({{"lamda", 0.5}}).get<RunConfig>(), ValidationError);
    CHECK_THROWS_AS(nlohmann::json({{"command", "plot"}}).get<RunConfig>(), ValidationError);
    CHECK_THROWS_AS(nlohmann::json({{"lambda", "fast"}}).get<RunConfig>(), ValidationError);
    CHECK_THROWS_AS(load_config("/nonexistent/aoi.json"), ValidationError);
    // Missing keys keep their defaults.
    CHECK(nlohmann::json({{"p", 0.25}}).get<RunConfig>().lambda == 0.5);
}

TEST_CASE("output directory precedence") {
    RunConfig c;
    ::unsetenv(kOutputDirEnv);
    CHECK(output_dir(c) == "aoi_output");
    ::setenv(kOutputDirEnv, "/tmp/from_env", 1);
    CHECK(output_dir(c) == "/tmp/from_env");
    c.out = "mine";
    CHECK(output_dir(c) == "mine");
    ::unsetenv(kOutputDirEnv);
}

TEST_CASE("params from the config") {
    RunConfig c;
    c.mu = 2.0;
    c.b2 = 0.5;
    const SystemParams p = params_of(c);
    CHECK(p.theta() == doctest::Approx(2.0 - 0.25));
    CHECK(p.b2() == 0.5);
    c.lambda = 3.0;
    CHECK_THROWS_AS(params_of(c), StabilityError);
}

TEST_CASE("analyze prints the baseline means") {
    RunConfig c;
    std::ostringstream out, err;
    CHECK(run_command(c, out, err) == kExitOk);
    CHECK(out.str().find("E[T1] = 3.000000") != std::string::npos);
    CHECK(out.str().find("E[T2] = 2.333333") != std::string::npos);
}

TEST_CASE("exit codes") {
    std::ostringstream out, err;
    RunConfig c;
    c.lambda = 1.2;
    CHECK(run_command(c, out, err) == kExitInvalid);
    CHECK(err.str().find("rho") != std::string::npos);

    c = RunConfig{};
    c.p = 0.0;
    out.str("");
    CHECK(run_command(c, out, err) == kExitOk);
    CHECK(out.str().find("not applicable") != std::string::npos);
}

TEST_CASE("validation suite passes and catches inverted priority") {
    RunConfig c;
    for (const PropertyResult& r : validation_suite(c)) {
        CAPTURE(r.detail);
        CHECK_MESSAGE(r.passed, r.name);
    }
    c.invert_priority = true;
    bool caught = false;
    for (const PropertyResult& r : validation_suite(c))
        if (!r.passed && r.name.find("priority") != std::string::npos) caught = true;
    CHECK(caught);
}
