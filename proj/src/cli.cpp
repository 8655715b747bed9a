#include "aoi/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "aoi/analytics.hpp"
#include "aoi/error.hpp"
#include "aoi/experiments.hpp"
#include "aoi/numerics.hpp"
#include "aoi/simulator.hpp"

namespace aoi {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

const std::vector<double> kDefaultCdfTimes{0.5, 1, 2, 3, 5, 7.5, 10, 15, 20, 30, 50};

void print_class(std::ostream& out, int cls, const ClassMetrics& m) {
    out << "class " << cls << (cls == 1 ? " (priority)" : " (non-priority)") << ": ";
    if (!m.applicable) {
        out << "not applicable\n";
        return;
    }
    out << m.label << "\n";
    out << "  E[T" << cls << "] = " << num(m.mean_delay) << "\n";
    out << "  E[A" << cls << "] = " << num(m.mean_paoi) << "\n";
    out << "  E[Delta" << cls << "] = " << num(m.mean_aoi) << "\n";
    if (m.mean_aoi_lower) out << "  E[Delta" << cls << "] lower bound = " << num(*m.mean_aoi_lower) << "\n";
    out << "  alpha" << cls << "(0) deficit = " << num(m.alpha_deficit);
    if (m.printed_alpha_deficit) out << " (printed form: " << num(*m.printed_alpha_deficit) << ")";
    out << "\n";
}

void write_cdf(const AnalyticReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << "class,t,delay,paoi,aoi\n";
    for (int cls : {1, 2}) {
        const ClassMetrics& m = cls == 1 ? report.class1 : report.class2;
        for (const CdfPoint& c : m.cdf)
            out << cls << ',' << num(c.t) << ',' << num(c.delay) << ',' << num(c.paoi) << ',' << num(c.aoi) << '\n';
    }
}

void print_sim_class(std::ostream& out, int cls, const ClassStats& s) {
    out << "class " << cls << ": ";
    if (!s.present) {
        out << "no measurements (generated " << s.generated << ")\n";
        return;
    }
    out << "generated " << s.generated << ", delivered " << s.delivered << ", in system " << s.in_system << "\n";
    out << "  delay = " << num(s.delay.mean) << " +- " << num(s.delay.ci_halfwidth) << " (var " << num(s.delay.variance)
        << ", n " << s.delay.count << ")\n";
    out << "  paoi  = " << num(s.paoi.mean) << " +- " << num(s.paoi.ci_halfwidth) << " (var " << num(s.paoi.variance)
        << ", n " << s.paoi.count << ")\n";
    out << "  aoi   = " << num(s.mean_aoi) << " +- " << num(s.aoi_ci_halfwidth) << "\n";
}

PropertyResult make(const std::string& name, bool passed, const std::string& detail) {
    return PropertyResult{name, passed, detail};
}

}  // namespace

int cmd_analyze(const RunConfig& config, std::ostream& out) {
    const SystemParams params = params_of(config);
    AnalyzeOptions options;
    const bool want_cdf = !config.cdf_times.empty() || !config.out.empty();
    if (want_cdf) options.cdf_times = config.cdf_times.empty() ? kDefaultCdfTimes : config.cdf_times;
    const AnalyticReport report = analyze(params, options);

    out << "params: " << params.describe() << "\n";
    print_class(out, 1, report.class1);
    print_class(out, 2, report.class2);
    out << "closed form vs numeric derivative:\n";
    for (const MeanCheck& c : report.checks)
        out << "  " << c.quantity << ": closed " << num(c.closed_form) << " numeric " << num(c.numeric)
            << (c.agree ? " agree" : " DISAGREE") << "\n";
    if (!report.discrepancies.empty()) {
        out << "discrepancies:\n";
        for (const std::string& d : report.discrepancies) out << "  - " << d << "\n";
    }
    if (want_cdf) {
        const std::string dir = output_dir(config);
        std::filesystem::create_directories(dir);
        const std::string path = (std::filesystem::path(dir) / "analytic_cdf.csv").string();
        write_cdf(report, path);
        out << "wrote " << path << "\n";
    }
    return kExitOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
    const SystemParams params = params_of(config);
    SimOptions options;
    options.n_packets = config.packets;
    options.seed = config.seed;
    options.warmup_fraction = config.warmup;
    options.invert_priority = config.invert_priority;

    std::ofstream trace;
    std::string trace_path;
    if (config.trace) {
        const std::string dir = output_dir(config);
        std::filesystem::create_directories(dir);
        trace_path = (std::filesystem::path(dir) / "trace.csv").string();
        trace.open(trace_path);
        if (!trace) throw ValidationError("cannot write " + trace_path);
        trace.precision(17);
        options.trace = &trace;
    }
    const SimReport report = run_simulation(params, options);
    out << "params: " << params.describe() << "\n";
    out << "packets " << report.n_packets << ", seed " << report.seed << ", warmup ends at t=" << num(report.t_warmup)
        << ", run ends at t=" << num(report.t_end) << "\n";
    print_sim_class(out, 1, report.class1);
    print_sim_class(out, 2, report.class2);
    if (config.trace) out << "wrote " << trace_path << "\n";
    return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
    const SweepResult result = run_sweep(sweep_spec_of(config));
    out << summary_text(result);
    for (const std::string& path : result.written) out << "wrote " << path << "\n";
    return kExitOk;
}

std::vector<PropertyResult> validation_suite(const RunConfig& config) {
    std::vector<PropertyResult> results;
    const TransformFn exp1 = TransformFn::of(ServiceDistribution::exponential(1.0));

    {
        double worst = 0.0;
        for (double l1 : {0.1, 0.25, 0.5, 0.9})
            for (double s : {0.0, 0.1, 1.0, 5.0, 20.0}) {
                const FixedPointResult r = solve_busy_period(exp1, l1, cplx(s, 0.0));
                worst = std::max(worst, std::abs(r.value - exp1(s + l1 - l1 * r.value)));
            }
        results.push_back(make("busy-period fixed-point residual", worst < 1e-12, "max residual " + sci(worst)));
    }
    {
        double worst = 0.0;
        const double l1 = 0.25;
        for (int i = 0; i <= 40; ++i) {
            const double s = 0.5 * i;
            // Smaller root of l1 g^2 - (s + l1 + 1) g + 1 = 0.
            const double b = s + l1 + 1.0;
            const double exact = (b - std::sqrt(b * b - 4.0 * l1)) / (2.0 * l1);
            worst = std::max(worst, std::abs(busy_period_lst(exp1, l1, s) - exact));
        }
        results.push_back(make("busy-period quadratic closed form", worst < 1e-10, "max error " + sci(worst)));
    }

    const SystemParams params = params_of(config);
    const TandemModel model(params);
    {
        double worst = 0.0;
        if (params.has_class1()) {
            worst = std::max(worst, std::abs(model.tau12(0.0) - 1.0));
            worst = std::max(worst, std::abs(model.tau1(0.0) - 1.0));
        }
        if (params.has_class2()) {
            worst = std::max(worst, std::abs(model.tau2(0.0) - 1.0));
            worst = std::max(worst, std::abs(model.psi2(0.0) - 1.0));
            worst = std::max(worst, std::abs(model.alpha2(0.0) - 1.0));
        }
        results.push_back(make("normalization at s=0", worst <= 1e-9, "max |value - 1| " + sci(worst)));
    }
    if (params.has_class1()) {
        double worst = 0.0;
        for (double s : {0.1, 0.5, 1.0}) {
            const PriorityCases c = model.priority_cases(s);
            cplx a = 0.0, t = 0.0;
            for (int m = 0; m < 6; ++m) {
                a += c.alpha[m];
                t += c.tau[m];
            }
            worst = std::max({worst, std::abs(a - model.alpha1(s)), std::abs(t - model.tau1(s))});
        }
        results.push_back(make("priority case sums", worst <= 1e-9, "max error " + sci(worst)));
    }
    {
        const AnalyticReport report = analyze(params);
        std::size_t disagree = 0, logged = 0;
        for (const MeanCheck& c : report.checks) disagree += !c.agree;
        for (const std::string& d : report.discrepancies)
            for (const MeanCheck& c : report.checks)
                if (!c.agree && d.rfind(c.quantity + ":", 0) == 0) ++logged;
        results.push_back(make("closed-form disagreements are reported", disagree == logged,
                               std::to_string(disagree) + " disagreements, " + std::to_string(logged) + " logged"));
    }

    {
        const SystemParams mm1 = SystemParams::exponential(0.5, 0.0);
        const double t = mean_T2(mm1), a = mean_A2(mm1), d = mean_delta2(mm1);
        const bool ok = std::abs(t - 2.0) < 1e-6 && std::abs(a - 4.0) < 1e-6 && std::abs(d - 3.5) < 1e-6;
        results.push_back(make("p=0 reduction (analytic)", ok,
                               "delay " + num(t) + " paoi " + num(a) + " aoi " + num(d) + " vs 2 / 4 / 3.5"));
        SimOptions o;
        o.n_packets = 10000;
        o.seed = config.seed;
        const SimReport r = run_simulation(mm1, o);
        const double rel = std::abs(r.class2.mean_aoi - 3.5) / 3.5;
        results.push_back(make("p=0 reduction (simulated AoI vs 3.5)", rel <= 0.05,
                               "aoi " + num(r.class2.mean_aoi) + ", relative error " + num(rel)));
    }

    SimOptions o;
    o.n_packets = 10000;
    o.seed = config.seed;
    o.warmup_fraction = config.warmup;
    o.invert_priority = config.invert_priority;
    const SimRun run = simulate(params, o);
    for (PropertyResult& r : check_all_properties(run)) results.push_back(std::move(r));

    if (params.has_class2() && run.report.class2.present) {
        const ClassStats& s = run.report.class2;
        const AnalyticReport report = analyze(params);
        bool ok = true;
        std::ostringstream detail;
        auto spot = [&](const char* name, double analytic, double sim, double hw) {
            const double tol = std::max(3.0 * hw, 0.03 * analytic);
            ok = ok && std::abs(analytic - sim) <= tol;
            detail << name << " " << num(analytic) << " vs " << num(sim) << "; ";
        };
        spot("delay", report.class2.mean_delay, s.delay.mean, s.delay.ci_halfwidth);
        spot("paoi", report.class2.mean_paoi, s.paoi.mean, s.paoi.ci_halfwidth);
        spot("aoi", report.class2.mean_aoi, s.mean_aoi, s.aoi_ci_halfwidth);
        results.push_back(make("class-2 analytics vs simulation", ok, detail.str()));
    }
    return results;
}

int cmd_validate(const RunConfig& config, std::ostream& out) {
    const std::vector<PropertyResult> results = validation_suite(config);
    std::vector<std::string> failed;
    for (const PropertyResult& r : results) {
        out << (r.passed ? "PASS  " : "FAIL  ") << r.name;
        if (!r.detail.empty()) out << "  (" << r.detail << ")";
        out << "\n";
        if (!r.passed) failed.push_back(r.name);
    }
    if (failed.empty()) {
        out << "all " << results.size() << " checks passed\n";
        return kExitOk;
    }
    out << failed.size() << " failed:";
    for (const std::string& f : failed) out << " [" << f << "]";
    out << "\n";
    return kExitFailed;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == "analyze") return cmd_analyze(config, out);
        if (config.command == "simulate") return cmd_simulate(config, out);
        if (config.command == "sweep") return cmd_sweep(config, out);
        if (config.command == "validate") return cmd_validate(config, out);
        err << "unknown command '" << config.command << "'\n";
        return kExitInvalid;
    } catch (const StabilityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailed;
    }
}

}  // namespace aoi
