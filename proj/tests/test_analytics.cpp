#include <cmath>

#include "doctest.h"

#include "aoi/analytics.hpp"
#include "aoi/error.hpp"
#include "aoi/numerics.hpp"

using namespace aoi;

namespace {

SystemParams p0() { return SystemParams::exponential(0.5, 0.5); }

// Cobham: non-preemptive priority M/G/1 mean sojourn times at node 2.
double cobham_high(const SystemParams& p) {
    const double w0 = 0.5 * (p.lambda1() * p.svc1().second_moment() + p.lambda2() * p.svc2().second_moment());
    return p.b1() + w0 / (1.0 - p.rho1());
}
double cobham_low(const SystemParams& p) {
    const double w0 = 0.5 * (p.lambda1() * p.svc1().second_moment() + p.lambda2() * p.svc2().second_moment());
    return p.b2() + w0 / ((1.0 - p.rho1()) * (1.0 - p.rho()));
}

// Single M/M/1 queue, arrival rate l, service rate m.
double mm1_aoi(double l, double m) {
    const double r = l / m;
    return (1.0 / m) * (1.0 + 1.0 / r + r * r / (1.0 - r));
}

}  // namespace

TEST_CASE("parameters derive utilisations and refuse unstable inputs") {
    const SystemParams p = p0();
    CHECK(p.lambda1() == 0.25);
    CHECK(p.lambda2() == 0.25);
    CHECK(p.rho() == 0.5);
    CHECK(p.rho11() == 0.25);
    CHECK(p.theta() == 0.75);
    CHECK_THROWS_AS(SystemParams::exponential(1.2, 0.5), StabilityError);
    CHECK_THROWS_AS(SystemParams::exponential(0.9, 1.0, 0.8), StabilityError);
    CHECK_THROWS_AS(SystemParams::exponential(0.5, 1.5), DomainError);
    CHECK_THROWS_AS(SystemParams::exponential(-0.5, 0.5), DomainError);
    try {
        SystemParams::exponential(1.2, 0.5);
    } catch (const StabilityError& e) {
        CHECK(std::string(e.what()).find("rho") != std::string::npos);
    }
    const SystemParams u = SystemParams::from_utilisation(0.6, 0.3, 1.0, ServiceDistribution::exponential(1.0),
                                                          ServiceDistribution::exponential(0.5));
    CHECK(u.rho() == doctest::Approx(0.6));
}

TEST_CASE("node-1 and node-2 delay transforms") {
    const SystemParams p = p0();
    CHECK(tau11_lst(p, 0.0) == 1.0);
    CHECK(tau11_lst(p, 0.75) == doctest::Approx(0.5));
    CHECK(numeric_mean_from_lst(TandemModel(p).tau11_fn()) == doctest::Approx(4.0 / 3.0).epsilon(1e-6));

    CHECK(tau12_lst(p, 0.0) == 1.0);
    CHECK(numeric_mean_from_lst(TandemModel(p).tau12_fn()) == doctest::Approx(5.0 / 3.0).epsilon(1e-6));
    const double v = tau12_lst(p, 0.25);
    CHECK(v > 0.0);
    CHECK(v < 1.0);

    CHECK(tau2_lst(p, 0.0) == 1.0);
    CHECK(numeric_mean_from_lst(TandemModel(p).tau2_fn()) == doctest::Approx(7.0 / 3.0).epsilon(1e-6));
    CHECK_THROWS_AS(tau12_lst(p, -1.0), DomainError);
}

TEST_CASE("delay means follow Cobham for other service laws") {
    const SystemParams p(0.6, 0.4, 1.5, ServiceDistribution::erlang(2, 2.0), ServiceDistribution::gamma(0.5, 0.4));
    const TandemModel m(p);
    CHECK(numeric_mean_from_lst(m.tau12_fn()) == doctest::Approx(cobham_high(p)).epsilon(1e-6));
    CHECK(numeric_mean_from_lst(m.tau2_fn()) == doctest::Approx(cobham_low(p)).epsilon(1e-6));
    CHECK(mean_T2(p) == doctest::Approx(cobham_low(p)).epsilon(1e-12));
    CHECK(mean_T1(p) == doctest::Approx(1.0 / (1.5 - 0.24) + cobham_high(p)).epsilon(1e-12));
}

TEST_CASE("p = 0 reduces class 2 to the M/M/1 queue") {
    const SystemParams p = SystemParams::exponential(0.5, 0.0);
    const TandemModel m(p);
    for (double s : {0.1, 0.5, 1.0, 3.0}) {
        // M/M/1 sojourn transform (mu - l)/(mu - l + s).
        CHECK(std::abs(m.tau2(s).real() - 0.5 / (0.5 + s)) < 1e-9);
        CHECK(std::abs(m.psi2(s) - m.tau2(s)) < 1e-12);
    }
    CHECK(numeric_mean_from_lst(m.tau2_fn()) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(mean_T2(p) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(mean_A2(p) == doctest::Approx(1.0 / 0.5 + 1.0 / (1.0 - 0.5)).epsilon(1e-6));
    CHECK(mean_delta2(p) == doctest::Approx(mm1_aoi(0.5, 1.0)).epsilon(1e-6));
    CHECK(mm1_aoi(0.5, 1.0) == doctest::Approx(3.5));
    CHECK_THROWS_AS(mean_T1(p), DomainError);
    CHECK_THROWS_AS(alpha1_lst(p, 1.0), DomainError);
}

TEST_CASE("normalization at s = 0") {
    for (double p : {0.1, 0.5, 0.9})
        for (double rho : {0.2, 0.6, 0.9}) {
            const SystemParams sp = SystemParams::exponential(rho, p);
            const TandemModel m(sp);
            CAPTURE(sp.describe());
            CHECK(std::abs(m.tau12(0.0) - 1.0) < 1e-9);
            CHECK(std::abs(m.tau2(0.0) - 1.0) < 1e-9);
            CHECK(std::abs(m.psi2(0.0) - 1.0) < 1e-9);
            CHECK(std::abs(m.alpha2(0.0) - 1.0) < 1e-9);
            CHECK(std::abs(m.tau1(0.0) - 1.0) < 1e-9);
            CHECK(std::abs(m.alpha1(0.0) - 1.0) < 1e-9);
            // The collapsed form loses exactly 1 - tau12(l1).
            CHECK(std::abs(m.alpha1_collapsed(0.0) - m.tau12(sp.lambda1())) < 1e-9);
        }
}

TEST_CASE("the case contributions sum to alpha1 and tau1") {
    const SystemParams p = p0();
    const TandemModel m(p);
    for (double s : {0.1, 0.5, 1.0, 0.25, 2.0}) {
        const PriorityCases c = case_lsts_priority(p, s);
        double a = 0.0, t = 0.0;
        for (int k = 0; k < 6; ++k) {
            a += c.alpha[k].real();
            t += c.tau[k].real();
            CHECK(c.alpha[k].real() >= 0.0);
            CHECK(c.alpha[k].real() <= 1.0);
        }
        CHECK(std::abs(a - alpha1_lst(p, s)) < 1e-9);
        CHECK(std::abs(t - tau1_lst(p, s)) < 1e-9);
    }
}

TEST_CASE("queueing cases at node 1 vanish as p -> 0") {
    const SystemParams p = SystemParams::exponential(0.5, 1e-6);
    const PriorityCases c = case_lsts_priority(p, 1.0);
    for (int k = 3; k < 6; ++k) CHECK(std::abs(c.alpha[k]) < 1e-5);
}

TEST_CASE("class-1 means at the baseline point") {
    const SystemParams p = p0();
    CHECK(mean_T1(p) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(mean_T1(SystemParams::exponential(1e-9, 0.5)) == doctest::Approx(2.0).epsilon(1e-6));

    const MeanCheck a1 = check_mean_A1(p);
    CHECK(a1.numeric == doctest::Approx(mean_A1(p)).epsilon(1e-12));
    CHECK(a1.numeric > 0.0);

    const double lower = mean_delta1_lower(p);
    CHECK(lower <= mean_A1(p));
    CHECK(lower <= mean_delta1(p));
    CHECK(mean_delta1(p) <= mean_A1(p));
}

TEST_CASE("class-1 PAoI grows like 1/l1 as l1 -> 0") {
    const double a = mean_A1(SystemParams::exponential(0.02, 0.5));
    const double b = mean_A1(SystemParams::exponential(0.01, 0.5));
    CHECK(a > 1.0 / 0.01);
    CHECK(b > 1.0 / 0.005);
    CHECK(b / a == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("class-2 closed forms are checked against derivatives") {
    for (double p : {0.1, 0.5, 0.9})
        for (double rho : {0.2, 0.5, 0.8}) {
            const SystemParams sp = SystemParams::exponential(rho, p);
            CAPTURE(sp.describe());
            const MeanCheck a2 = check_mean_A2(sp);
            const MeanCheck d2 = check_mean_delta2(sp);
            CHECK(a2.value == a2.numeric);
            CHECK(d2.value == d2.numeric);
            CHECK(d2.value <= a2.value);
            CHECK(check_mean_T2(sp).agree);
        }
}

TEST_CASE("every disagreement surfaces in the report") {
    const AnalyticReport r = analyze(p0());
    std::size_t disagree = 0;
    for (const MeanCheck& c : r.checks) {
        if (c.agree) continue;
        ++disagree;
        bool logged = false;
        for (const std::string& d : r.discrepancies) logged = logged || d.rfind(c.quantity + ":", 0) == 0;
        CHECK_MESSAGE(logged, c.quantity);
    }
    CHECK(r.discrepancies.size() >= disagree);
    CHECK(r.class1.label == kClass1Label);
    CHECK(r.class2.label == kClass2Label);
    CHECK(r.class1.mean_aoi_lower.has_value());
    CHECK(r.class2.alpha_deficit == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("adding delay lowers the transform") {
    for (double p : {0.2, 0.6})
        for (double rho : {0.3, 0.8}) {
            const SystemParams sp = SystemParams::exponential(rho, p);
            const TandemModel m(sp);
            for (double s : {0.05, 0.3, 1.0, 4.0}) {
                CHECK(m.tau1(s).real() <= m.tau11(s).real());
                CHECK(m.tau2(s).real() <= m.beta2(s).real());
            }
        }
}

TEST_CASE("AoI transforms need s > 0 and stay finite near 0") {
    const SystemParams p = p0();
    CHECK_THROWS_AS(delta1_lst(p, 0.0), DomainError);
    CHECK_THROWS_AS(delta2_lst(p, 0.0), DomainError);
    CHECK(std::isfinite(delta1_lst(p, 1e-6)));
    CHECK(delta2_lst(p, 1e-4) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("analytic CDFs from inversion") {
    AnalyzeOptions o;
    o.cdf_times = {1.0, 5.0, 20.0, 80.0};
    const AnalyticReport r = analyze(p0(), o);
    REQUIRE(r.class2.cdf.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) CHECK(r.class2.cdf[i].aoi >= r.class2.cdf[i - 1].aoi);
    CHECK(r.class2.cdf.back().aoi > 0.999);
    CHECK(r.class1.cdf.back().delay > 0.999);
}
