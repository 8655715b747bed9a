#include "aoi/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <boost/math/distributions/students_t.hpp>

#include "aoi/error.hpp"

namespace aoi {

SweepSpec SweepSpec::default_grid() {
    SweepSpec spec;
    spec.p_values = {0.1, 0.3, 0.5, 0.7, 0.9};
    spec.rho_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    return spec;
}

void validate(const SweepSpec& spec) {
    if (spec.p_values.empty()) throw ValidationError("sweep: empty p list");
    if (spec.rho_values.empty()) throw ValidationError("sweep: empty rho list");
    for (double p : spec.p_values)
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("sweep: p outside [0, 1]");
    for (double r : spec.rho_values)
        if (!(r > 0.0)) throw ValidationError("sweep: rho must be positive");
    if (!(spec.b > 0.0 && spec.b1 > 0.0 && spec.b2 > 0.0)) throw ValidationError("sweep: means must be positive");
    if (spec.seeds.empty()) throw ValidationError("sweep: no seeds");
    if (spec.n_packets < kMinPackets) throw ValidationError("sweep: at least 1000 packets per run");
    if (!(spec.warmup_fraction >= 0.0 && spec.warmup_fraction < 0.5))
        throw ValidationError("sweep: warmup fraction must lie in [0, 0.5)");
}

SystemParams params_for(const SweepSpec& spec, double p, double rho) {
    return SystemParams::from_utilisation(rho, p, 1.0 / spec.b, ServiceDistribution::from_spec(spec.svc1, spec.b1),
                                          ServiceDistribution::from_spec(spec.svc2, spec.b2));
}

namespace {

double t_quantile(std::size_t n) {
    boost::math::students_t dist(static_cast<double>(n - 1));
    return boost::math::quantile(dist, 0.975);
}

void mean_and_halfwidth(const std::vector<double>& xs, double& mean, double& hw) {
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    hw = 0.0;
    if (xs.size() < 2) return;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    hw = t_quantile(xs.size()) * std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
}

SimulatedMeans aggregate(const std::vector<SimReport>& runs, int cls) {
    SimulatedMeans out;
    std::vector<double> d, a, g;
    for (const SimReport& r : runs) {
        const ClassStats& s = r.cls(cls);
        if (!s.present) return out;
        d.push_back(s.delay.mean);
        a.push_back(s.paoi.mean);
        g.push_back(s.mean_aoi);
    }
    out.present = true;
    mean_and_halfwidth(d, out.delay, out.delay_hw);
    mean_and_halfwidth(a, out.paoi, out.paoi_hw);
    mean_and_halfwidth(g, out.aoi, out.aoi_hw);
    // A single replication has no spread across seeds; fall back to batch means.
    if (runs.size() == 1) {
        const ClassStats& s = runs.front().cls(cls);
        out.delay_hw = s.delay.ci_halfwidth;
        out.paoi_hw = s.paoi.ci_halfwidth;
        out.aoi_hw = s.aoi_ci_halfwidth;
    }
    return out;
}

PointResult run_point(const SweepSpec& spec, double p, double rho) {
    PointResult out;
    out.p = p;
    out.rho = rho;
    std::optional<SystemParams> params;
    try {
        params = params_for(spec, p, rho);
    } catch (const StabilityError& e) {
        out.skipped = true;
        out.reason = e.what();
        return out;
    } catch (const DomainError& e) {
        out.skipped = true;
        out.reason = e.what();
        return out;
    }
    out.rho1 = params->rho1();
    out.rho2 = params->rho2();
    try {
        out.analytic = analyze(*params);
    } catch (const NumericError& e) {
        out.reason = std::string("analytic: ") + e.what();
    }

    std::vector<SimReport> runs;
    for (std::uint64_t seed : spec.seeds) {
        SimOptions o;
        o.n_packets = spec.n_packets;
        o.seed = seed;
        o.warmup_fraction = spec.warmup_fraction;
        runs.push_back(run_simulation(*params, o));
    }
    out.sim1 = aggregate(runs, 1);
    out.sim2 = aggregate(runs, 2);
    return out;
}

void add_rows(const PointResult& pt, std::vector<ComparisonRow>& rows) {
    if (pt.skipped || !pt.analytic) return;
    auto push = [&](int cls, const char* metric, double analytic, double sim, double hw, const std::string& label) {
        ComparisonRow r;
        r.p = pt.p;
        r.rho = pt.rho;
        r.cls = cls;
        r.metric = metric;
        r.analytic = analytic;
        r.simulated = sim;
        r.ci_halfwidth = hw;
        r.relative_error = std::abs(analytic - sim) / sim;
        r.label = label;
        rows.push_back(r);
    };
    const AnalyticReport& a = *pt.analytic;
    if (a.class1.applicable && pt.sim1.present) {
        push(1, "delay", a.class1.mean_delay, pt.sim1.delay, pt.sim1.delay_hw, "approximate");
        push(1, "paoi", a.class1.mean_paoi, pt.sim1.paoi, pt.sim1.paoi_hw, "approximate");
        push(1, "aoi", a.class1.mean_aoi, pt.sim1.aoi, pt.sim1.aoi_hw, "approximate");
        if (a.class1.mean_aoi_lower)
            push(1, "aoi_lower", *a.class1.mean_aoi_lower, pt.sim1.aoi, pt.sim1.aoi_hw, "lower bound");
    }
    if (a.class2.applicable && pt.sim2.present) {
        push(2, "delay", a.class2.mean_delay, pt.sim2.delay, pt.sim2.delay_hw, "exact");
        push(2, "paoi", a.class2.mean_paoi, pt.sim2.paoi, pt.sim2.paoi_hw, "exact");
        push(2, "aoi", a.class2.mean_aoi, pt.sim2.aoi, pt.sim2.aoi_hw, "exact");
    }
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    validate(spec);
    SweepResult result;
    result.spec = spec;

    std::vector<std::pair<double, double>> grid;
    for (double p : spec.p_values)
        for (double rho : spec.rho_values) grid.emplace_back(p, rho);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    result.points.resize(grid.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                result.points[i] = run_point(spec, grid[i].first, grid[i].second);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    unsigned n_threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(grid.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    for (const PointResult& pt : result.points) add_rows(pt, result.rows);
    std::sort(result.rows.begin(), result.rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
        return std::tie(a.p, a.rho, a.cls, a.metric) < std::tie(b.p, b.rho, b.cls, b.metric);
    });

    if (!spec.output_dir.empty()) write_outputs(result, spec.output_dir, &result.written);
    return result;
}

void write_outputs(const SweepResult& result, const std::string& dir, std::vector<std::string>* written) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto open = [&](const std::string& name) {
        const std::string path = (fs::path(dir) / name).string();
        std::ofstream out(path);
        if (!out) throw ValidationError("cannot write " + path);
        if (written) written->push_back(path);
        return out;
    };

    for (int cls : {1, 2}) {
        for (const char* panel : {"delay", "paoi", "aoi"}) {
            std::ofstream out = open("class" + std::to_string(cls) + "_" + panel + ".csv");
            out << kPanelHeader << '\n';
            for (const ComparisonRow& r : result.rows) {
                if (r.cls != cls) continue;
                if (r.metric != panel && !(std::string(panel) == "aoi" && r.metric == "aoi_lower")) continue;
                out << fmt(r.rho) << ',' << fmt(r.p) << ',' << r.metric << ',' << fmt(r.analytic) << ','
                    << fmt(r.simulated) << ',' << fmt(r.ci_halfwidth) << '\n';
            }
        }
    }

    {
        // Class-1 approximation error against rho2, the load the 1 - rho2 assumption ignores.
        std::ofstream out = open("class1_bound_tightness.csv");
        out << "rho2,rho,p,metric,abs_error,relative_error\n";
        std::map<std::pair<double, double>, double> rho2_of;
        for (const PointResult& pt : result.points) rho2_of[{pt.p, pt.rho}] = pt.rho2;
        std::vector<ComparisonRow> rows;
        for (const ComparisonRow& r : result.rows)
            if (r.cls == 1 && r.metric != "delay") rows.push_back(r);
        std::stable_sort(rows.begin(), rows.end(), [&](const ComparisonRow& a, const ComparisonRow& b) {
            return std::tie(rho2_of[{a.p, a.rho}], a.metric, a.p) < std::tie(rho2_of[{b.p, b.rho}], b.metric, b.p);
        });
        for (const ComparisonRow& r : rows)
            out << fmt(rho2_of[{r.p, r.rho}]) << ',' << fmt(r.rho) << ',' << fmt(r.p) << ',' << r.metric << ','
                << fmt(std::abs(r.analytic - r.simulated)) << ',' << fmt(r.relative_error) << '\n';
    }

    std::ofstream out = open("summary.txt");
    out << summary_text(result);
}

std::string summary_text(const SweepResult& result) {
    std::ostringstream out;
    const SweepSpec& s = result.spec;
    out << "sweep: " << s.p_values.size() << " p values x " << s.rho_values.size() << " rho values, "
        << s.n_packets << " packets x " << s.seeds.size() << " seeds, svc1=" << s.svc1 << " svc2=" << s.svc2
        << " b=" << s.b << " b1=" << s.b1 << " b2=" << s.b2 << "\n";
    for (const PointResult& pt : result.points)
        if (pt.skipped || !pt.reason.empty())
            out << "skipped p=" << pt.p << " rho=" << pt.rho << ": " << pt.reason << "\n";

    for (int cls : {1, 2}) {
        for (const char* metric : {"delay", "paoi", "aoi", "aoi_lower"}) {
            bool header = false;
            double worst = 0.0;
            for (const ComparisonRow& r : result.rows) {
                if (r.cls != cls || r.metric != metric) continue;
                if (!header) {
                    out << "\nclass " << cls << " " << metric << " (" << r.label << ")\n";
                    out << "      p    rho    analytic   simulated   ci_hw    rel_err\n";
                    header = true;
                }
                char line[128];
                std::snprintf(line, sizeof line, "  %5.2f  %5.2f  %10.5f  %10.5f  %7.4f  %8.4f%%\n", r.p, r.rho,
                              r.analytic, r.simulated, r.ci_halfwidth, 100.0 * r.relative_error);
                out << line;
                worst = std::max(worst, r.relative_error);
            }
            if (header) out << "  max relative error " << fmt(100.0 * worst) << "%\n";
        }
    }
    return out.str();
}

AoiMinimum find_aoi_minimum(const SweepResult& result, double p, int cls) {
    std::vector<const PointResult*> line;
    for (const PointResult& pt : result.points)
        if (pt.p == p && !pt.skipped && pt.sim(cls).present) line.push_back(&pt);
    if (line.size() < 5) throw ValidationError("find_aoi_minimum: need at least 5 rho points");
    std::sort(line.begin(), line.end(), [](const PointResult* a, const PointResult* b) { return a->rho < b->rho; });

    std::size_t best = 0;
    for (std::size_t i = 1; i < line.size(); ++i)
        if (line[i]->sim(cls).aoi < line[best]->sim(cls).aoi) best = i;
    AoiMinimum out;
    out.p = p;
    out.cls = cls;
    out.rho = line[best]->rho;
    out.rho1 = line[best]->rho1;
    out.value = line[best]->sim(cls).aoi;
    out.interior = best > 0 && best + 1 < line.size();
    return out;
}

AoiMinimum find_aoi_minimum(const SweepSpec& spec, int cls) {
    if (spec.p_values.size() != 1) throw ValidationError("find_aoi_minimum: spec must fix a single p");
    if (spec.rho_values.size() < 5) throw ValidationError("find_aoi_minimum: need at least 5 rho points");
    SweepSpec quiet = spec;
    quiet.output_dir.clear();
    return find_aoi_minimum(run_sweep(quiet), spec.p_values.front(), cls);
}

}  // namespace aoi
