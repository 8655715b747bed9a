#include "aoi/sim_checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aoi/metrics.hpp"

namespace aoi {

namespace {

std::vector<const Packet*> class_packets(const SimRun& run, int cls) {
    std::vector<const Packet*> out;
    for (const Packet& p : run.packets)
        if (p.cls == cls) out.push_back(&p);
    return out;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

PropertyResult check_priority_safety(const SimRun& run) {
    PropertyResult r{"priority safety", true, ""};
    std::size_t violations = 0;
    for (const ServiceRecord& s : run.services)
        if (s.cls == 2 && s.class1_waiting > 0) ++violations;
    if (violations > 0) {
        r.passed = false;
        r.detail = std::to_string(violations) + " non-priority services started with priority packets waiting";
    }
    return r;
}

PropertyResult check_non_preemption(const SimRun& run) {
    PropertyResult r{"non-preemption", true, ""};
    std::size_t bad = 0;
    for (const Packet& p : run.packets) {
        if (!p.delivered()) continue;
        if (!close(p.t_depart, p.t_service_start_node2 + p.service_node2)) ++bad;
    }
    for (std::size_t k = 1; k < run.services.size(); ++k)
        if (run.services[k].start < run.services[k - 1].end) ++bad;
    if (bad > 0) {
        r.passed = false;
        r.detail = std::to_string(bad) + " interrupted or overlapping services";
    }
    return r;
}

PropertyResult check_work_conservation(const SimRun& run) {
    PropertyResult r{"work conservation", true, ""};
    std::vector<double> entries;
    for (const Packet& p : run.packets)
        if (!std::isnan(p.t_enter_node2)) entries.push_back(p.t_enter_node2);
    std::sort(entries.begin(), entries.end());

    std::size_t bad = 0;
    double idle_from = 0.0;
    for (const ServiceRecord& s : run.services) {
        if (s.start > idle_from) {
            // Idle gap: nothing may enter node 2 in [idle_from, start), and the
            // packet served next must have arrived exactly at start.
            const auto inside = std::lower_bound(entries.begin(), entries.end(), s.start) -
                                std::lower_bound(entries.begin(), entries.end(), idle_from);
            if (inside > 0 || run.packets[s.packet_id].t_enter_node2 != s.start) ++bad;
        }
        idle_from = s.end;
    }
    if (bad > 0) {
        r.passed = false;
        r.detail = std::to_string(bad) + " idle periods with work waiting";
    }
    return r;
}

PropertyResult check_conservation(const SimRun& run) {
    PropertyResult r{"conservation", true, ""};
    std::ostringstream detail;
    for (int cls : {1, 2}) {
        const ClassStats& st = run.report.cls(cls);
        std::uint64_t generated = 0, delivered = 0;
        for (const Packet& p : run.packets) {
            if (p.cls != cls) continue;
            ++generated;
            if (p.delivered()) ++delivered;
        }
        if (st.generated != generated || st.delivered != delivered || st.generated != st.delivered + st.in_system) {
            r.passed = false;
            detail << "class " << cls << ": generated " << st.generated << " != delivered " << st.delivered
                   << " + in system " << st.in_system << "; ";
        }
    }
    std::uint64_t total = run.report.class1.delivered + run.report.class2.delivered;
    if (total != run.report.n_packets) {
        r.passed = false;
        detail << "delivered " << total << " != requested " << run.report.n_packets;
    }
    r.detail = detail.str();
    return r;
}

PropertyResult check_fcfs_identity(const SimRun& run) {
    PropertyResult r{"FCFS identity A = Y + T", true, ""};
    std::size_t bad = 0, checked = 0;
    for (int cls : {1, 2}) {
        const auto mine = class_packets(run, cls);
        const auto deliveries = deliveries_of(run.packets, cls);
        if (deliveries.size() < 2) continue;
        const auto peaks = peak_age_samples(deliveries);
        for (std::size_t i = 1; i < deliveries.size(); ++i) {
            const Packet& p = *mine[i];
            const double y = p.t_gen - mine[i - 1]->t_gen;
            const double t = p.t_depart - p.t_gen;
            ++checked;
            if (!p.delivered() || !close(peaks[i - 1], y + t)) ++bad;
        }
    }
    if (bad > 0) {
        r.passed = false;
        r.detail = std::to_string(bad) + " of " + std::to_string(checked) + " packets break A = Y + T";
    } else {
        r.detail = std::to_string(checked) + " packets checked";
    }
    return r;
}

PropertyResult check_node1_exponential(const SimRun& run) {
    PropertyResult r{"node-1 delay exponential (KS 1%)", true, ""};
    std::vector<double> delays;
    for (const Packet& p : run.packets)
        if (p.cls == 1 && p.t_gen >= run.report.t_warmup && !std::isnan(p.t_enter_node2))
            delays.push_back(p.t_enter_node2 - p.t_gen);
    if (delays.size() < 2) {
        r.detail = "no priority traffic";
        return r;
    }
    const double theta = run.report.params.theta();
    const double d = ks_statistic_exponential(delays, theta);
    const double pv = ks_pvalue(d, delays.size());
    std::ostringstream detail;
    detail << "n=" << delays.size() << " D=" << d << " p=" << pv;
    r.detail = detail.str();
    r.passed = pv >= 0.01;
    return r;
}

std::vector<PropertyResult> check_all_properties(const SimRun& run) {
    return {check_priority_safety(run),   check_non_preemption(run), check_work_conservation(run),
            check_conservation(run),      check_fcfs_identity(run),  check_node1_exponential(run)};
}

std::vector<int> classify_priority_cases(const SimRun& run) {
    const auto mine = class_packets(run, 1);
    std::vector<int> cases(mine.size(), 0);

    std::vector<std::pair<double, double>> class2_service;
    for (const ServiceRecord& s : run.services)
        if (s.cls == 2) class2_service.emplace_back(s.start, s.end);

    for (std::size_t k = 1; k < mine.size(); ++k) {
        const Packet& p = *mine[k];
        const Packet& prev = *mine[k - 1];
        if (!p.delivered() || !prev.delivered()) continue;
        const bool queued_node1 = p.t_gen < prev.t_enter_node2;
        const double arrive = p.t_enter_node2;
        int c = 1;
        if (prev.t_depart > arrive) {
            c = 2;
        } else {
            auto it = std::upper_bound(class2_service.begin(), class2_service.end(), arrive,
                                       [](double t, const std::pair<double, double>& s) { return t < s.first; });
            if (it != class2_service.begin() && std::prev(it)->second > arrive) c = 3;
        }
        cases[k] = c + (queued_node1 ? 3 : 0);
    }
    return cases;
}

CaseLsts empirical_case_lsts(const SimRun& run, double s) {
    const auto mine = class_packets(run, 1);
    const auto cases = classify_priority_cases(run);
    CaseLsts out;
    for (std::size_t k = 1; k < mine.size(); ++k) {
        if (cases[k] == 0 || mine[k]->t_gen < run.report.t_warmup) continue;
        const double a = mine[k]->t_depart - mine[k - 1]->t_gen;
        const double t = mine[k]->t_depart - mine[k]->t_gen;
        const auto m = static_cast<std::size_t>(cases[k] - 1);
        out.alpha[m] += std::exp(-s * a);
        out.tau[m] += std::exp(-s * t);
        out.share[m] += 1.0;
        ++out.count;
    }
    if (out.count > 0) {
        const double n = static_cast<double>(out.count);
        for (std::size_t m = 0; m < 6; ++m) {
            out.alpha[m] /= n;
            out.tau[m] /= n;
            out.share[m] /= n;
        }
    }
    return out;
}

}  // namespace aoi
