#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include "doctest.h"

#include "aoi/error.hpp"
#include "aoi/experiments.hpp"

using namespace aoi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("aoi_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("spec validation") {
    SweepSpec s = SweepSpec::default_grid();
    CHECK_NOTHROW(validate(s));
    s.rho_values.clear();
    CHECK_THROWS_AS(validate(s), ValidationError);
    s = SweepSpec::default_grid();
    s.p_values = {1.2};
    CHECK_THROWS_AS(validate(s), ValidationError);
    s = SweepSpec::default_grid();
    s.seeds.clear();
    CHECK_THROWS_AS(run_sweep(s), ValidationError);
}

TEST_CASE("lambda is back-solved from rho") {
    SweepSpec s = SweepSpec::default_grid();
    CHECK(params_for(s, 0.5, 0.6).lambda() == doctest::Approx(0.6));
    s.b1 = 0.5;
    s.b2 = 2.0;
    const SystemParams p = params_for(s, 0.25, 0.6);
    CHECK(p.rho() == doctest::Approx(0.6));
}

TEST_CASE("single p = 0 point reproduces the M/M/1 oracles") {
    SweepSpec s;
    s.p_values = {0.0};
    s.rho_values = {0.5};
    const SweepResult r = run_sweep(s);
    REQUIRE(r.points.size() == 1);
    std::size_t class2 = 0;
    for (const ComparisonRow& row : r.rows) {
        CHECK(row.cls == 2);
        ++class2;
        const double oracle = row.metric == "delay" ? 2.0 : row.metric == "paoi" ? 4.0 : 3.5;
        CHECK(row.simulated == doctest::Approx(oracle).epsilon(0.02));
        CHECK(row.analytic == doctest::Approx(oracle).epsilon(1e-6));
        CHECK(row.relative_error == doctest::Approx(std::abs(row.analytic - row.simulated) / row.simulated));
        CHECK(row.label == "exact");
    }
    CHECK(class2 == 3);
}

TEST_CASE("unstable points are skipped, not fatal") {
    SweepSpec s;
    s.p_values = {0.9};
    s.rho_values = {0.5, 1.1};
    s.b = 2.0;  // node 1 saturates: rho11 = 0.9 * 0.5 * 2 = 0.9 ... and 1.98 at rho 1.1
    s.n_packets = 5000;
    s.seeds = {1};
    const SweepResult r = run_sweep(s);
    REQUIRE(r.points.size() == 2);
    CHECK_FALSE(r.points[0].skipped);
    CHECK(r.points[1].skipped);
    CHECK(r.points[1].reason.find("rho") != std::string::npos);
}

TEST_CASE("CSV panels are written and byte-identical on rerun") {
    SweepSpec s;
    s.p_values = {0.3, 0.7};
    s.rho_values = {0.2, 0.6};
    s.n_packets = 5000;
    s.seeds = {1, 2};
    s.output_dir = scratch("a").string();
    const SweepResult a = run_sweep(s);
    s.output_dir = scratch("b").string();
    s.threads = 2;
    const SweepResult b = run_sweep(s);

    const std::vector<std::string> panels{"class1_delay.csv", "class1_paoi.csv", "class1_aoi.csv",
                                          "class2_delay.csv", "class2_paoi.csv", "class2_aoi.csv"};
    for (const std::string& name : panels) {
        CAPTURE(name);
        const std::string x = slurp(fs::path(a.spec.output_dir) / name);
        CHECK(x.rfind(std::string(kPanelHeader) + "\n", 0) == 0);
        CHECK(x == slurp(fs::path(b.spec.output_dir) / name));
    }
    CHECK(fs::exists(fs::path(a.spec.output_dir) / "class1_bound_tightness.csv"));
    CHECK(fs::exists(fs::path(a.spec.output_dir) / "summary.txt"));
    CHECK(a.written.size() == 8);

    // Rows are sorted by (p, rho, class, metric).
    for (std::size_t i = 1; i < a.rows.size(); ++i) {
        const auto& x = a.rows[i - 1];
        const auto& y = a.rows[i];
        CHECK(std::tie(x.p, x.rho, x.cls, x.metric) < std::tie(y.p, y.rho, y.cls, y.metric));
    }
}

TEST_CASE("AoI minimum along rho") {
    SweepSpec s;
    s.p_values = {0.5};
    s.n_packets = 20000;
    s.seeds = {1};

    SUBCASE("interior minimum on the default grid") {
        s.rho_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        const AoiMinimum m = find_aoi_minimum(s);
        CHECK(m.interior);
        CHECK(m.rho1 == doctest::Approx(0.5 * m.rho));
    }
    SUBCASE("near-empty system: minimum at the largest load") {
        s.rho_values = {0.001, 0.002, 0.003, 0.004, 0.005};
        const AoiMinimum m = find_aoi_minimum(s);
        CHECK_FALSE(m.interior);
        CHECK(m.rho == 0.005);
    }
    SUBCASE("too few points") {
        s.rho_values = {0.1, 0.2, 0.3};
        CHECK_THROWS_AS(find_aoi_minimum(s), ValidationError);
    }
}
