#include "aoi/simulator.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>

#include "aoi/error.hpp"

namespace aoi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class EventKind : int { generation = 0, node1_departure = 1, node2_departure = 2 };

struct Event {
    double time;
    EventKind kind;
    std::uint64_t packet_id;

    bool operator>(const Event& o) const {
        if (time != o.time) return time > o.time;
        if (kind != o.kind) return kind > o.kind;
        return packet_id > o.packet_id;
    }
};

// Independent generators so that one stream's draws never depend on how
// events of another stream interleave.
enum Stream : std::uint64_t { arrivals = 0, marks = 1, node1 = 2, node2_class1 = 3, node2_class2 = 4 };

Rng make_stream(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return Rng(seq);
}

class Engine {
public:
    Engine(const SystemParams& params, const SimOptions& options)
        : params_(params),
          options_(options),
          arrivals_(make_stream(options.seed, Stream::arrivals)),
          marks_(make_stream(options.seed, Stream::marks)),
          node1_rng_(make_stream(options.seed, Stream::node1)),
          class1_rng_(make_stream(options.seed, Stream::node2_class1)),
          class2_rng_(make_stream(options.seed, Stream::node2_class2)),
          node1_service_(ServiceDistribution::exponential(params.mu())) {}

    void run() {
        if (options_.trace) *options_.trace << kTraceHeader << '\n';
        schedule({next_interarrival(), EventKind::generation, 0});
        while (departures_.size() < options_.n_packets) {
            const Event e = calendar_.top();
            calendar_.pop();
            switch (e.kind) {
                case EventKind::generation: on_generation(e.time); break;
                case EventKind::node1_departure: on_node1_departure(e.time, e.packet_id); break;
                case EventKind::node2_departure: on_node2_departure(e.time, e.packet_id); break;
            }
        }
    }

    std::vector<Packet>& packets() { return packets_; }
    std::vector<ServiceRecord>& services() { return services_; }
    const std::vector<double>& departures() const { return departures_; }

private:
    double next_interarrival() {
        std::exponential_distribution<double> gap(params_.lambda());
        return clock_ + gap(arrivals_);
    }

    void schedule(const Event& e) {
        if (calendar_.size() >= options_.max_calendar) throw ResourceError("event calendar overflow");
        calendar_.push(e);
    }

    void trace(double t, const char* event, const Packet& p, int node) {
        if (!options_.trace) return;
        *options_.trace << t << ',' << event << ',' << p.cls << ',' << p.id << ',' << node << '\n';
    }

    void on_generation(double t) {
        clock_ = t;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Packet p;
        p.cls = u(marks_) < params_.p() ? 1 : 2;
        p.id = packets_.size();
        p.seq = p.cls == 1 ? count1_++ : count2_++;
        p.t_gen = t;
        p.t_enter_node2 = kNaN;
        p.t_service_start_node2 = kNaN;
        p.t_depart = kNaN;
        if (p.cls == 1) {
            p.service_node1 = node1_service_.sample(node1_rng_);
            p.service_node2 = params_.svc1().sample(class1_rng_);
        } else {
            p.service_node2 = params_.svc2().sample(class2_rng_);
        }
        packets_.push_back(p);
        trace(t, "generation", p, p.cls == 1 ? 1 : 2);

        if (p.cls == 1) {
            if (node1_busy_) {
                node1_line_.push_back(p.id);
            } else {
                start_node1(t, p.id);
            }
        } else {
            enter_node2(t, p.id);
        }
        schedule({next_interarrival(), EventKind::generation, packets_.size()});
    }

    void start_node1(double t, std::uint64_t id) {
        node1_busy_ = true;
        schedule({t + packets_[id].service_node1, EventKind::node1_departure, id});
    }

    void on_node1_departure(double t, std::uint64_t id) {
        clock_ = t;
        trace(t, "node1_departure", packets_[id], 1);
        node1_busy_ = false;
        if (!node1_line_.empty()) {
            const std::uint64_t next = node1_line_.front();
            node1_line_.pop_front();
            start_node1(t, next);
        }
        enter_node2(t, id);
    }

    void enter_node2(double t, std::uint64_t id) {
        packets_[id].t_enter_node2 = t;
        if (in_service_) {
            (packets_[id].cls == 1 ? line1_ : line2_).push_back(id);
        } else {
            start_node2(t, id);
        }
    }

    void start_node2(double t, std::uint64_t id) {
        Packet& p = packets_[id];
        p.t_service_start_node2 = t;
        in_service_ = id;
        const double end = t + p.service_node2;
        services_.push_back({id, p.cls, t, end, line1_.size(), line2_.size()});
        trace(t, "node2_service_start", p, 2);
        schedule({end, EventKind::node2_departure, id});
    }

    void on_node2_departure(double t, std::uint64_t id) {
        clock_ = t;
        packets_[id].t_depart = t;
        departures_.push_back(t);
        trace(t, "node2_departure", packets_[id], 2);
        in_service_.reset();

        std::deque<std::uint64_t>& first = options_.invert_priority ? line2_ : line1_;
        std::deque<std::uint64_t>& second = options_.invert_priority ? line1_ : line2_;
        std::deque<std::uint64_t>* line = !first.empty() ? &first : (!second.empty() ? &second : nullptr);
        if (line) {
            const std::uint64_t next = line->front();
            line->pop_front();
            start_node2(t, next);
        }
    }

    const SystemParams& params_;
    const SimOptions& options_;
    Rng arrivals_, marks_, node1_rng_, class1_rng_, class2_rng_;
    ServiceDistribution node1_service_;

    double clock_ = 0.0;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> calendar_;
    std::vector<Packet> packets_;
    std::vector<ServiceRecord> services_;
    std::vector<double> departures_;
    std::uint64_t count1_ = 0;
    std::uint64_t count2_ = 0;

    bool node1_busy_ = false;
    std::deque<std::uint64_t> node1_line_;
    std::optional<std::uint64_t> in_service_;
    std::deque<std::uint64_t> line1_;
    std::deque<std::uint64_t> line2_;
};

ClassStats class_stats(const std::vector<Packet>& packets, int cls, double t_w, const SimOptions& options) {
    ClassStats out;
    std::vector<const Packet*> mine;
    for (const Packet& p : packets) {
        if (p.cls != cls) continue;
        mine.push_back(&p);
        ++out.generated;
        if (p.delivered()) ++out.delivered;
    }
    out.in_system = out.generated - out.delivered;

    std::vector<double> delay, paoi;
    for (std::size_t i = 0; i < mine.size(); ++i) {
        const Packet& p = *mine[i];
        if (!p.delivered() || p.t_gen < t_w) continue;
        delay.push_back(p.t_depart - p.t_gen);
        if (i > 0) paoi.push_back(p.t_depart - mine[i - 1]->t_gen);
    }
    if (paoi.size() < 2) return out;
    out.present = true;
    out.delay = summarize(delay);
    out.paoi = summarize(paoi);

    const std::vector<Delivery> deliveries = deliveries_of(packets, cls);
    const double start = std::max(t_w, deliveries.front().t_depart);
    const double end = deliveries.back().t_depart;
    out.mean_aoi = aoi_time_average(deliveries, start, end);
    std::vector<double> batches;
    const double width = (end - start) / kBatches;
    for (int b = 0; b < kBatches; ++b) {
        const double lo = start + b * width;
        batches.push_back(aoi_time_average(deliveries, lo, b + 1 == kBatches ? end : lo + width));
    }
    out.aoi_ci_halfwidth = batch_halfwidth(batches);

    if (!options.cdf_grid.empty()) {
        out.cdf_delay = empirical_cdf(delay, options.cdf_grid);
        out.cdf_paoi = empirical_cdf(paoi, options.cdf_grid);
    }
    for (double s : options.lst_points) {
        out.lst_delay.push_back(empirical_lst(delay, s));
        out.lst_paoi.push_back(empirical_lst(paoi, s));
    }
    return out;
}

}  // namespace

std::vector<Delivery> deliveries_of(const std::vector<Packet>& packets, int cls) {
    std::vector<Delivery> out;
    for (const Packet& p : packets)
        if (p.cls == cls && p.delivered()) out.push_back({p.t_gen, p.t_depart});
    // FCFS within a class makes generation order the departure order; sort anyway
    // so that a broken discipline shows up in the identity checks, not here.
    std::stable_sort(out.begin(), out.end(),
                     [](const Delivery& a, const Delivery& b) { return a.t_depart < b.t_depart; });
    return out;
}

SimRun simulate(const SystemParams& params, const SimOptions& options) {
    if (options.n_packets < kMinPackets) throw DomainError("simulation needs at least 1000 packets");
    if (!(options.warmup_fraction >= 0.0 && options.warmup_fraction < 0.5))
        throw DomainError("warmup fraction must lie in [0, 0.5)");
    // SystemParams already refuses rho >= 1; re-check in case it is ever relaxed.
    if (!(params.rho() < 1.0 && params.rho11() < 1.0)) throw StabilityError("unstable: rho >= 1 or rho11 >= 1");

    Engine engine(params, options);
    engine.run();

    SimRun run{SimReport{params, options.n_packets, options.seed, options.warmup_fraction, 0.0, 0.0,
                         options.cdf_grid, options.lst_points, {}, {}},
               {}, {}};
    run.packets = std::move(engine.packets());
    run.services = std::move(engine.services());
    SimReport& r = run.report;
    const auto& deps = engine.departures();
    const auto warm = static_cast<std::size_t>(options.warmup_fraction * static_cast<double>(deps.size()));
    r.t_warmup = warm == 0 ? 0.0 : deps[warm - 1];
    r.t_end = deps.back();
    r.class1 = class_stats(run.packets, 1, r.t_warmup, options);
    r.class2 = class_stats(run.packets, 2, r.t_warmup, options);
    return run;
}

SimReport run_simulation(const SystemParams& params, const SimOptions& options) {
    return simulate(params, options).report;
}

}  // namespace aoi
