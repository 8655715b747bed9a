#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aoi/analytics.hpp"
#include "aoi/simulator.hpp"

namespace aoi {

/// A (p, rho) grid. lambda is back-solved from rho and the class means.
struct SweepSpec {
    std::vector<double> p_values;
    std::vector<double> rho_values;
    double b = 1.0;   ///< node-1 mean service time, mu = 1/b
    double b1 = 1.0;
    double b2 = 1.0;
    std::string svc1 = "exponential";
    std::string svc2 = "exponential";
    std::uint64_t n_packets = 100000;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    double warmup_fraction = 0.1;
    std::string output_dir;  ///< empty: nothing is written
    unsigned threads = 0;    ///< 0: hardware concurrency

    /// p in {0.1, 0.3, 0.5, 0.7, 0.9}, rho in {0.1, ..., 0.9}, exponential, b = b1 = b2 = 1.
    static SweepSpec default_grid();
};

/// Throws ValidationError for empty grids, probabilities outside [0, 1],
/// non-positive rho or means, no seeds, or too few packets.
void validate(const SweepSpec& spec);

struct ComparisonRow {
    double p = 0.0;
    double rho = 0.0;
    int cls = 1;
    std::string metric;  ///< "delay", "paoi", "aoi" or "aoi_lower"
    double analytic = 0.0;
    double simulated = 0.0;
    double ci_halfwidth = 0.0;
    double relative_error = 0.0;  ///< |analytic - simulated| / simulated
    std::string label;            ///< "exact", "approximate" or "lower bound"
};

struct SimulatedMeans {
    bool present = false;
    double delay = 0.0, delay_hw = 0.0;
    double paoi = 0.0, paoi_hw = 0.0;
    double aoi = 0.0, aoi_hw = 0.0;
};

struct PointResult {
    double p = 0.0;
    double rho = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    bool skipped = false;
    std::string reason;
    std::optional<AnalyticReport> analytic;
    /// Mean over seeds; half-width is a Student t interval over the seeds.
    SimulatedMeans sim1, sim2;

    const SimulatedMeans& sim(int cls) const { return cls == 1 ? sim1 : sim2; }
};

struct SweepResult {
    SweepSpec spec;
    std::vector<PointResult> points;  ///< sorted by (p, rho)
    std::vector<ComparisonRow> rows;  ///< sorted by (p, rho, class, metric)
    std::vector<std::string> written;  ///< paths of emitted files
};

SystemParams params_for(const SweepSpec& spec, double p, double rho);

/// Analytic and simulated means for every grid point, comparison rows, and
/// (when output_dir is set) the CSV panels plus a summary report.
SweepResult run_sweep(const SweepSpec& spec);

/// CSV header of the per-panel files.
inline constexpr const char* kPanelHeader = "rho,p,metric,analytic,simulated,ci_halfwidth";

void write_outputs(const SweepResult& result, const std::string& dir, std::vector<std::string>* written = nullptr);
std::string summary_text(const SweepResult& result);

struct AoiMinimum {
    double p = 0.0;
    int cls = 1;
    double rho = 0.0;   ///< grid argmin of the simulated time-average AoI
    double rho1 = 0.0;  ///< priority utilisation at the minimum
    double value = 0.0;
    bool interior = false;  ///< false when the argmin is an end of the grid
};

/// Grid argmin of the simulated AoI of one class along rho for fixed p.
/// Needs at least 5 non-skipped rho points.
AoiMinimum find_aoi_minimum(const SweepResult& result, double p, int cls = 1);
AoiMinimum find_aoi_minimum(const SweepSpec& spec, int cls = 1);

}  // namespace aoi
