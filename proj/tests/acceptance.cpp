// Acceptance run: one PASS/FAIL line per criterion. Exits 0 once every line
// is printed; a red criterion is a finding, not a crash.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "aoi/analytics.hpp"
#include "aoi/error.hpp"
#include "aoi/experiments.hpp"
#include "aoi/numerics.hpp"
#include "aoi/sim_checks.hpp"
#include "aoi/simulator.hpp"
#include "aoi/transform.hpp"

using namespace aoi;

namespace {

constexpr double kTolClass2Low = 0.02;   // rho <= 0.7
constexpr double kTolClass2High = 0.04;  // rho in {0.8, 0.9}
constexpr double kTolA1 = 0.03;
constexpr double kRho1MinLo = 0.5;
constexpr double kRho1MinHi = 0.75;
constexpr double kRho1Threshold = 0.63;
constexpr double kGapTol = 0.15;
constexpr double kTolDegenerate = 0.01;
constexpr double kTolExact = 1e-6;
constexpr double kTolResidual = 1e-12;
constexpr double kTolQuadratic = 1e-10;
constexpr double kTolNorm = 1e-9;
constexpr double kTolInversionTail = 1e-3;
constexpr double kTolInversionMean = 0.005;
constexpr double kRuntimeBudget = 300.0;

struct Line {
    int id;
    bool pass;
    std::string detail;
};

void print(const Line& l) {
    std::printf("criterion %d: %s  %s\n", l.id, l.pass ? "PASS" : "FAIL", l.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Line criterion1(const SweepResult& r, double seconds) {
    double worst_low = 0.0, worst_high = 0.0;
    std::string where;
    bool ok = true;
    std::size_t n = 0;
    for (const ComparisonRow& row : r.rows) {
        if (row.cls != 2) continue;
        ++n;
        const double tol = row.rho <= 0.7 + 1e-12 ? kTolClass2Low : kTolClass2High;
        double& worst = row.rho <= 0.7 + 1e-12 ? worst_low : worst_high;
        if (row.relative_error > worst) worst = row.relative_error;
        if (row.relative_error > tol) {
            ok = false;
            where += fmt(" [p=%.1f rho=%.1f ", row.p, row.rho) + row.metric + fmt(" %.2f%%]", 100 * row.relative_error);
        }
    }
    ok = ok && n == 3 * 45 && seconds < kRuntimeBudget;
    return {1, ok,
            fmt("class-2 rows %.0f, worst rel err %.2f%% (rho<=0.7), ", double(n), 100 * worst_low) +
                fmt("%.2f%% (rho>=0.8), grid runtime %.1f s", 100 * worst_high, seconds) + where};
}

Line criterion2(const SweepResult& r) {
    double worst = 0.0;
    int bound_violations = 0;
    std::string where;
    bool fit = true;
    for (const PointResult& pt : r.points) {
        if (pt.skipped || !pt.analytic || !pt.sim1.present) continue;
        const double e = rel(pt.analytic->class1.mean_paoi, pt.sim1.paoi);
        worst = std::max(worst, e);
        if (e > kTolA1) fit = false;
        const double lower = *pt.analytic->class1.mean_aoi_lower;
        if (lower > pt.sim1.aoi + pt.sim1.aoi_hw) {
            ++bound_violations;
            where += fmt(" [p=%.1f rho=%.1f lower %.3f", pt.p, pt.rho, lower) + fmt(" > sim %.3f]", pt.sim1.aoi);
        }
    }
    return {2, fit && bound_violations == 0,
            fmt("PAoI fit worst %.2f%% ", 100 * worst) + (fit ? "(within 3%)" : "(exceeds 3%)") +
                fmt(", lower-bound violations %.0f/45", bound_violations) + where};
}

Line criterion3(const SweepResult& r) {
    bool ok = true;
    std::string detail;
    int tested = 0;
    for (double p : r.spec.p_values) {
        if (p * r.spec.rho_values.back() < kRho1Threshold) continue;
        ++tested;
        const AoiMinimum m1 = find_aoi_minimum(r, p, 1);
        const bool in = m1.interior && m1.rho1 >= kRho1MinLo && m1.rho1 <= kRho1MinHi;
        ok = ok && in;
        detail += fmt(" [p=%.1f class 1: rho=%.1f rho1=%.2f", p, m1.rho, m1.rho1) + (m1.interior ? " interior" : " boundary");
        const AoiMinimum m2 = find_aoi_minimum(r, p, 2);
        ok = ok && m2.interior;
        detail += fmt("; class 2: rho=%.1f", m2.rho) + (m2.interior ? " interior]" : " boundary]");
    }
    ok = ok && tested > 0;
    return {3, ok, fmt("p values crossing rho1=0.63: %.0f;", tested) + detail};
}

Line criterion4(const SweepResult& r) {
    int dominance = 0, loose = 0, points = 0;
    double worst_gap = 0.0;
    for (const PointResult& pt : r.points) {
        if (pt.skipped) continue;
        ++points;
        for (const SimulatedMeans* s : {&pt.sim1, &pt.sim2}) {
            if (!s->present) continue;
            if (s->paoi < s->aoi) ++dominance;
            if (pt.rho <= 0.5 + 1e-12) {
                const double gap = (s->paoi - s->aoi) / s->paoi;
                worst_gap = std::max(worst_gap, gap);
                if (gap > kGapTol) ++loose;
            }
        }
    }
    return {4, dominance == 0 && loose == 0 && points == 45,
            fmt("points %.0f, PAoI < AoI at %.0f class-points, ", points, dominance) +
                fmt("gap > 15%% at %.0f (rho<=0.5), worst gap %.1f%%", loose, 100 * worst_gap)};
}

Line criterion5() {
    std::string detail;
    bool ok = true;
    SimOptions o;
    o.n_packets = 1000000;
    o.seed = 101;

    const SystemParams p0 = SystemParams::exponential(0.5, 0.0);
    const double an[3] = {mean_T2(p0), mean_A2(p0), mean_delta2(p0)};
    const double oracle[3] = {2.0, 4.0, 3.5};
    const SimReport r0 = run_simulation(p0, o);
    const double sim[3] = {r0.class2.delay.mean, r0.class2.paoi.mean, r0.class2.mean_aoi};
    for (int k = 0; k < 3; ++k) ok = ok && rel(an[k], oracle[k]) <= kTolDegenerate && rel(sim[k], oracle[k]) <= kTolDegenerate;
    detail += fmt("p=0 analytic %.4f/%.4f/%.4f", an[0], an[1], an[2]) + fmt(" sim %.4f/%.4f/%.4f", sim[0], sim[1], sim[2]);

    const SystemParams p1 = SystemParams::exponential(0.5, 1.0);
    const double l1 = p1.lambda1();
    const double w0 = 0.5 * l1 * p1.svc1().second_moment();
    const double cobham = 1.0 / (p1.mu() - l1) + p1.b1() + w0 / (1.0 - l1 * p1.b1());
    const double t1 = mean_T1(p1);
    const double t1_numeric = numeric_mean_from_lst(TandemModel(p1).tau1_fn());
    o.seed = 102;
    const SimReport r1 = run_simulation(p1, o);
    ok = ok && std::abs(t1 - cobham) <= kTolExact && std::abs(t1_numeric - cobham) <= kTolExact &&
         rel(r1.class1.delay.mean, cobham) <= kTolDegenerate;
    detail += fmt("; p=1 E[T1] oracle %.6f analytic %.6f numeric %.6f", cobham, t1, t1_numeric) +
              fmt(" sim %.4f", r1.class1.delay.mean);
    return {5, ok, detail};
}

Line criterion6(const SweepResult& r) {
    double residual = 0.0, quad = 0.0, norm = 0.0, casesum = 0.0;
    int unlogged = 0, disagreements = 0;

    const TransformFn exp1 = TransformFn::of(ServiceDistribution::exponential(1.0));
    for (double l : {0.05, 0.25, 0.5, 0.8, 0.95})
        for (int i = 0; i <= 400; ++i) {
            const double s = 0.05 * i;
            const FixedPointResult fp = solve_busy_period(exp1, l, cplx(s, 0.0));
            residual = std::max(residual, std::abs(fp.value - exp1(cplx(s + l, 0.0) - l * fp.value)));
            const double b = s + l + 1.0;
            const double closed = (b - std::sqrt(b * b - 4.0 * l)) / (2.0 * l);
            quad = std::max(quad, std::abs(fp.value.real() - closed));
        }

    for (const PointResult& pt : r.points) {
        if (pt.skipped || !pt.analytic) continue;
        const AnalyticReport& a = *pt.analytic;
        const TandemModel m(a.params);
        norm = std::max({norm, std::abs(m.tau12(0.0) - 1.0), std::abs(m.tau2(0.0) - 1.0), std::abs(m.alpha2(0.0) - 1.0)});
        for (double s : {0.05, 0.5, 2.0}) {
            const PriorityCases c = case_lsts_priority(a.params, s);
            cplx sum = 0.0;
            for (const cplx& v : c.alpha) sum += v;
            casesum = std::max(casesum, std::abs(sum - m.alpha1(s)));
        }
        for (const MeanCheck& c : a.checks) {
            if (c.agree) continue;
            ++disagreements;
            bool logged = false;
            for (const std::string& d : a.discrepancies) logged = logged || d.rfind(c.quantity + ":", 0) == 0;
            if (!logged) ++unlogged;
        }
    }
    const bool ok = residual < kTolResidual && quad < kTolQuadratic && norm < kTolNorm && casesum < kTolNorm && unlogged == 0;
    return {6, ok,
            fmt("busy residual %.1e, quadratic %.1e, normalization %.1e", residual, quad, norm) +
                fmt(", case sum %.1e, mean disagreements %.0f (unlogged %.0f)", casesum, disagreements, unlogged)};
}

Line criterion7() {
    const SystemParams p = SystemParams::exponential(0.5, 0.5);
    const TransformFn f = TandemModel(p).delta2_fn();
    const double dt = 0.05;
    const double horizon = 80.0;
    std::vector<double> times;
    for (double t = dt; t <= horizon + 1e-9; t += dt) times.push_back(t);
    std::vector<double> cdf;
    try {
        cdf = invert_lst_cdf_grid(f, times);
    } catch (const NumericError& e) {
        return {7, false, std::string("inversion failed: ") + e.what()};
    }
    int drops = 0;
    for (std::size_t i = 1; i < cdf.size(); ++i)
        if (cdf[i] < cdf[i - 1] - 1e-9) ++drops;
    // Mean as the integral of the survival function, trapezoid from F(0) = 0.
    double mean = 0.5 * dt * (1.0 + (1.0 - cdf[0]));
    for (std::size_t i = 1; i < cdf.size(); ++i) mean += 0.5 * dt * ((1.0 - cdf[i - 1]) + (1.0 - cdf[i]));
    const double target = mean_delta2(p);
    const bool ok = drops == 0 && cdf.back() >= 1.0 - kTolInversionTail && rel(mean, target) <= kTolInversionMean;
    return {7, ok,
            fmt("decreasing steps %.0f, F(80) = %.6f, ", drops, cdf.back()) +
                fmt("integrated mean %.4f vs E[Delta2] %.4f (%.3f%%)", mean, target, 100 * rel(mean, target))};
}

Line criterion8() {
    SimOptions o;
    o.n_packets = 100000;
    o.seed = 7;
    const SimRun run = simulate(SystemParams::exponential(0.5, 0.5), o);
    bool ok = true;
    std::string detail;
    for (const PropertyResult& r : check_all_properties(run)) {
        ok = ok && r.passed;
        detail += " [" + r.name + (r.passed ? " ok]" : " FAILED: " + r.detail + "]");
    }
    return {8, ok, detail};
}

}  // namespace

int main() {
    SweepSpec spec = SweepSpec::default_grid();
    spec.threads = 1;
    const auto t0 = std::chrono::steady_clock::now();
    const SweepResult grid = run_sweep(spec);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::vector<std::function<Line()>> criteria{
        [&] { return criterion1(grid, seconds); }, [&] { return criterion2(grid); },
        [&] { return criterion3(grid); },          [&] { return criterion4(grid); },
        [] { return criterion5(); },               [&] { return criterion6(grid); },
        [] { return criterion7(); },               [] { return criterion8(); }};
    int passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Line l;
        try {
            l = criteria[i]();
        } catch (const std::exception& e) {
            l = {int(i + 1), false, std::string("error: ") + e.what()};
        }
        passed += l.pass;
        print(l);
    }
    std::printf("%d/%zu criteria pass\n", passed, criteria.size());
    return 0;
}
