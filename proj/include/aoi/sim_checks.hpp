#pragma once

#include <array>
#include <string>
#include <vector>

#include "aoi/simulator.hpp"

namespace aoi {

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

PropertyResult check_priority_safety(const SimRun& run);
PropertyResult check_non_preemption(const SimRun& run);
PropertyResult check_work_conservation(const SimRun& run);
PropertyResult check_conservation(const SimRun& run);
/// A_i = Y_i + T_i for every delivered packet i >= 2 of each class.
PropertyResult check_fcfs_identity(const SimRun& run);
/// Node-1 sojourn of priority packets against exponential(theta), KS at 1%.
PropertyResult check_node1_exponential(const SimRun& run);

std::vector<PropertyResult> check_all_properties(const SimRun& run);

/// Case C1..C6 of each priority packet, indexed by class sequence number.
/// 0 marks packets that cannot be classified (the first one, or undelivered).
///   C1/C4: previous packet gone, node 2 idle or serving priority work
///   C2/C5: previous priority packet still at node 2
///   C3/C6: a non-priority service in progress on arrival at node 2
/// C4..C6 are C1..C3 for packets that queued at node 1.
std::vector<int> classify_priority_cases(const SimRun& run);

/// E[exp(-sA) 1{C = m}] and E[exp(-sT) 1{C = m}] over measured priority packets.
struct CaseLsts {
    std::array<double, 6> alpha{};
    std::array<double, 6> tau{};
    std::array<double, 6> share{};  ///< fraction of packets in each case
    std::size_t count = 0;
};

CaseLsts empirical_case_lsts(const SimRun& run, double s);

}  // namespace aoi
