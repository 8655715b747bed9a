#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "aoi/metrics.hpp"
#include "aoi/params.hpp"

namespace aoi {

/// Lifecycle of one update. Class-2 packets skip node 1, so for them
/// t_enter_node2 == t_gen. Times not reached by the end of the run are NaN.
struct Packet {
    int cls = 1;
    std::uint64_t seq = 0;  ///< 0-based order within the class
    std::uint64_t id = 0;   ///< global generation order
    double t_gen = 0.0;
    double t_enter_node2 = 0.0;
    double t_service_start_node2 = 0.0;
    double t_depart = 0.0;
    double service_node1 = 0.0;  ///< 0 for class 2
    double service_node2 = 0.0;

    bool delivered() const noexcept { return !std::isnan(t_depart); }
};

/// One service at node 2, with the line lengths seen when it started.
struct ServiceRecord {
    std::uint64_t packet_id = 0;
    int cls = 1;
    double start = 0.0;
    double end = 0.0;
    std::size_t class1_waiting = 0;
    std::size_t class2_waiting = 0;
};

struct SimOptions {
    std::uint64_t n_packets = 100000;  ///< total departures before stopping
    std::uint64_t seed = 1;
    double warmup_fraction = 0.1;      ///< share of departures discarded
    std::vector<double> cdf_grid;      ///< times for the empirical CDFs
    std::vector<double> lst_points;    ///< s values for empirical LSTs
    std::ostream* trace = nullptr;     ///< CSV event trace when set
    std::size_t max_calendar = 1u << 20;
    /// Negative control: serve class 2 ahead of class 1 at node 2.
    bool invert_priority = false;
};

struct ClassStats {
    bool present = false;
    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t in_system = 0;
    SampleSummary delay;
    SampleSummary paoi;
    double mean_aoi = 0.0;
    double aoi_ci_halfwidth = 0.0;
    std::vector<double> cdf_delay;
    std::vector<double> cdf_paoi;
    std::vector<double> lst_delay;
    std::vector<double> lst_paoi;

    bool operator==(const ClassStats&) const = default;
};

struct SimReport {
    SystemParams params;
    std::uint64_t n_packets = 0;
    std::uint64_t seed = 0;
    double warmup_fraction = 0.0;
    double t_warmup = 0.0;  ///< measurement starts here
    double t_end = 0.0;
    std::vector<double> cdf_grid;
    std::vector<double> lst_points;
    ClassStats class1;
    ClassStats class2;

    const ClassStats& cls(int j) const { return j == 1 ? class1 : class2; }
    bool operator==(const SimReport&) const = default;
};

/// Full output of a run: the report plus the raw logs the property checks use.
struct SimRun {
    SimReport report;
    std::vector<Packet> packets;  ///< in generation order
    std::vector<ServiceRecord> services;
};

inline constexpr std::uint64_t kMinPackets = 1000;

SimRun simulate(const SystemParams& params, const SimOptions& options);
SimReport run_simulation(const SystemParams& params, const SimOptions& options);

/// Delivered packets of one class, in departure order.
std::vector<Delivery> deliveries_of(const std::vector<Packet>& packets, int cls);

/// Column order of the event trace.
inline constexpr const char* kTraceHeader = "time,event,class,packet_id,node";

}  // namespace aoi
