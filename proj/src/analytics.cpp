#include "aoi/analytics.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "aoi/error.hpp"
#include "aoi/numerics.hpp"

namespace aoi {

namespace {

const cplx kZero(0.0, 0.0);

bool is_zero(cplx s) { return s == kZero; }

}  // namespace

TandemModel::TandemModel(SystemParams params)
    : params_(std::move(params)), beta1_fn_(TransformFn::of(params_.svc1(), "beta1")) {}

void TandemModel::require_class1(const char* what) const {
    if (!params_.has_class1()) throw DomainError(std::string(what) + ": no priority traffic (p = 0)");
}

void TandemModel::require_class2(const char* what) const {
    if (!params_.has_class2()) throw DomainError(std::string(what) + ": no non-priority traffic (p = 1)");
}

cplx TandemModel::beta(cplx s) const { return params_.mu() / (params_.mu() + s); }
cplx TandemModel::beta1(cplx s) const { return params_.svc1().lst(s); }
cplx TandemModel::beta2(cplx s) const { return params_.svc2().lst(s); }

cplx TandemModel::residual2(cplx s) const {
    if (is_zero(s)) return 1.0;
    return (1.0 - beta2(s)) / (s * params_.b2());
}

cplx TandemModel::gamma(cplx s) const { return busy_period_lst(beta1_fn_, params_.lambda1(), s); }

cplx TandemModel::gamma_residual(cplx s) const {
    if (is_zero(s)) return 1.0;
    const double busy_mean = params_.b1() / (1.0 - params_.rho1());
    return (1.0 - gamma(s)) / (busy_mean * s);
}

cplx TandemModel::sigma(cplx s) const {
    const double l1 = params_.lambda1();
    return s + l1 - l1 * gamma(s);
}

cplx TandemModel::nu(cplx s) const {
    const double r2 = params_.rho2();
    return 1.0 - r2 + r2 * residual2(s);
}

cplx TandemModel::tau11(cplx s) const {
    const double th = params_.theta();
    return th / (th + s);
}

cplx TandemModel::tau12(cplx s) const {
    if (is_zero(s)) return 1.0;
    const double l1 = params_.lambda1();
    const double l2 = params_.lambda2();
    const cplx b1 = beta1(s);
    return (s * (1.0 - params_.rho()) + l2 * (1.0 - beta2(s))) / (s - l1 + l1 * b1) * b1;
}

cplx TandemModel::omega2(cplx s) const {
    if (is_zero(s)) return 1.0;
    const double l2 = params_.lambda2();
    const cplx x = sigma(s);
    return (1.0 - params_.rho()) * x / (s - l2 + l2 * beta2(x));
}

cplx TandemModel::tau2(cplx s) const {
    require_class2("tau2");
    return omega2(s) * beta2(s);
}

cplx TandemModel::psi2(cplx s) const {
    require_class2("psi2");
    return omega2(s) * beta2(sigma(s));
}

PriorityCaseTerms TandemModel::case_terms(cplx s) const {
    require_class1("priority cases");
    const double l1 = params_.lambda1();
    const double mu = params_.mu();
    const double r11 = params_.rho11();
    const double th = params_.theta();
    const cplx b1 = beta1(s);
    const cplx t11 = tau11(s);
    const cplx t12 = tau12(s);
    const cplx t12_l1 = tau12(cplx(l1, 0.0));
    const cplx t12_mu = tau12(s + mu);

    PriorityCaseTerms c;
    c.eta13 = l1 / (l1 + s) * b1 * tau12(l1 + s) - r11 * b1 * b1 * t12_mu;
    c.xi13 = t11 * t12_l1 - r11 * t11 * b1 * t12_mu;
    c.eta2 = (1.0 - r11) * b1 * t12 - b1 * tau12(s + l1) + r11 * b1 * t12_mu;
    // Removable pole at s = l1: the two 1/(s - l1) terms cancel there.
    auto xi2_raw = [&](cplx z) {
        return l1 / (z - l1) * tau11(z) * t12_l1 - r11 * th / (z - l1) * tau12(z) + r11 * tau11(z) * tau12(z + mu);
    };
    c.xi2 = eval_near_removable(xi2_raw, s, l1);
    c.eta46 = r11 * t11 * b1 * b1 * t12_mu;
    c.xi46 = r11 * t11 * b1 * t12_mu;
    c.eta5 = r11 * t11 * b1 * (t12 - t12_mu);
    c.xi5 = r11 * t11 * (t12 - t12_mu);
    return c;
}

PriorityCases TandemModel::priority_cases(cplx s) const {
    const PriorityCaseTerms c = case_terms(s);
    const double r2 = params_.rho2();
    const cplx b1 = beta1(s);
    const cplx res = residual2(s);
    PriorityCases out;
    out.alpha = {(1.0 - r2) * c.eta13 * b1, c.eta2 * b1, r2 * c.eta13 * res * b1,
                 (1.0 - r2) * c.eta46 * b1, c.eta5 * b1, r2 * c.eta46 * res * b1};
    out.tau = {(1.0 - r2) * c.xi13 * b1, c.xi2 * b1, r2 * c.xi13 * res * b1,
               (1.0 - r2) * c.xi46 * b1, c.xi5 * b1, r2 * c.xi46 * res * b1};
    return out;
}

cplx TandemModel::alpha1(cplx s) const {
    const PriorityCases cases = priority_cases(s);
    cplx sum = 0.0;
    for (const cplx& term : cases.alpha) sum += term;
    return sum;
}

cplx TandemModel::alpha1_collapsed(cplx s) const {
    require_class1("alpha1");
    const double l1 = params_.lambda1();
    const double mu = params_.mu();
    const double th = params_.theta();
    const double r11 = params_.rho11();
    const cplx n = nu(s);
    const cplx b1 = beta1(s);
    const cplx first = l1 * n / (l1 + s) * b1 * tau12(l1 + s);
    const cplx second = s / (s + th) * r11 * b1 * (tau12(s) - tau12(s + mu) * (1.0 - n * b1));
    return (first - second) * b1;
}

cplx TandemModel::tau1(cplx s) const {
    require_class1("tau1");
    const double l1 = params_.lambda1();
    const double r11 = params_.rho11();
    const cplx t12_l1 = tau12(cplx(l1, 0.0));
    auto raw = [&](cplx z) {
        const cplx t11 = tau11(z);
        const cplx pole = l1 / (l1 - z);
        return (t11 * t12_l1 * (nu(z) - pole) + tau12(z) * ((1.0 - r11) * pole + r11 * t11)) * beta1(z);
    };
    return eval_near_removable(raw, s, l1);
}

cplx TandemModel::delta1(cplx s) const {
    require_class1("delta1");
    if (is_zero(s)) return 1.0;
    return params_.lambda1() / s * (tau1(s) - alpha1(s));
}

cplx TandemModel::delta1_expanded(cplx s) const {
    require_class1("delta1");
    const double l1 = params_.lambda1();
    const double mu = params_.mu();
    const double r11 = params_.rho11();
    const cplx t12_l1 = tau12(cplx(l1, 0.0));
    auto raw = [&](cplx z) {
        const cplx n = nu(z);
        const cplx b1 = beta1(z);
        const cplx bn = beta(z);
        const cplx bn_res = (1.0 - bn) * mu / z;  // residual of the node-1 service
        const cplx t11 = tau11(z);
        const cplx extra = l1 / z * (1.0 - n);
        return b1 * (t11 * t12_l1 * l1 / (z - l1) * (n + extra) + l1 / (l1 + z) * b1 * tau12(z) * (1.0 + extra) -
                     r11 * r11 * r11 * bn / (1.0 - r11) * t11 * tau12(mu + z) * t11 * (1.0 - n * bn) +
                     n * r11 * r11 * bn_res * bn);
    };
    return eval_near_removable(raw, s, l1);
}

NonPriorityCases TandemModel::nonpriority_cases(cplx s) const {
    require_class2("non-priority cases");
    const double l1 = params_.lambda1();
    const double l2 = params_.lambda2();
    const cplx shifted = s + l2;
    const cplx q = psi2(shifted);
    const cplx sigma_shifted = sigma(shifted);
    const cplx b2 = beta2(s);
    NonPriorityCases c;
    // After Psi the node is empty; the next packet arrives Exp(l2) later and
    // waits for the priority work that accumulated meanwhile.
    c.b1 = q * l2 / sigma_shifted * b2;
    c.b2 = q * l1 * (gamma(s) - gamma(shifted)) / sigma_shifted * b2;
    c.b3 = (psi2(s) - q) * b2;
    return c;
}

cplx TandemModel::alpha2(cplx s) const {
    const NonPriorityCases c = nonpriority_cases(s);
    return c.b1 + c.b2 + c.b3;
}

cplx TandemModel::alpha2_stationary(cplx s) const {
    require_class2("alpha2");
    const double l2 = params_.lambda2();
    const double r1 = params_.rho1();
    const cplx q = psi2(s + l2);
    const cplx arrival = l2 / (l2 + s);
    return ((1.0 - r1) * arrival * q + psi2(s) - q + r1 * arrival * q * gamma_residual(s)) * beta2(s);
}

cplx TandemModel::delta2(cplx s) const {
    require_class2("delta2");
    if (is_zero(s)) return 1.0;
    return params_.lambda2() / s * (tau2(s) - alpha2(s));
}

cplx TandemModel::delta2_expanded(cplx s) const {
    require_class2("delta2");
    if (is_zero(s)) return 1.0;
    const double lam = params_.lambda();
    const double l2 = params_.lambda2();
    const double r1 = params_.rho1();
    const double r2 = params_.rho2();
    const double busy2_mean = params_.b2() / (1.0 - r1);
    const cplx busy2_res = (1.0 - beta2(sigma(s))) / (s * busy2_mean);
    const cplx arrival = l2 / (lam + s);
    return r2 / (1.0 - r1) * tau2(s) * busy2_res +
           psi2(l2 + s) * beta2(s) * (arrival + r1 * arrival * l2 / s * (1.0 - gamma_residual(s)));
}

namespace {

using Member = cplx (TandemModel::*)(cplx) const;

TransformFn wrap(const TandemModel& model, Member member, TransformFn::Info info) {
    auto shared = std::make_shared<const TandemModel>(model);
    return TransformFn([shared, member](cplx s) { return ((*shared).*member)(s); }, std::move(info));
}

TransformFn::Info info_of(std::string name, bool singular, bool proper = true) {
    TransformFn::Info info;
    info.name = std::move(name);
    info.singular_at_zero = singular;
    info.proper = proper;
    if (singular && proper) info.limit_at_zero = 1.0;
    return info;
}

}  // namespace

TransformFn TandemModel::tau11_fn() const {
    auto info = info_of("tau11", false);
    info.mean = 1.0 / params_.theta();
    return wrap(*this, &TandemModel::tau11, info);
}
TransformFn TandemModel::tau12_fn() const { return wrap(*this, &TandemModel::tau12, info_of("tau12", true)); }
TransformFn TandemModel::tau2_fn() const { return wrap(*this, &TandemModel::tau2, info_of("tau2", true)); }
TransformFn TandemModel::psi2_fn() const { return wrap(*this, &TandemModel::psi2, info_of("psi2", true)); }
TransformFn TandemModel::tau1_fn() const { return wrap(*this, &TandemModel::tau1, info_of("tau1", false)); }
TransformFn TandemModel::alpha1_fn() const { return wrap(*this, &TandemModel::alpha1, info_of("alpha1", false)); }
TransformFn TandemModel::alpha1_collapsed_fn() const {
    return wrap(*this, &TandemModel::alpha1_collapsed, info_of("alpha1 (collapsed)", false, false));
}
TransformFn TandemModel::delta1_fn() const { return wrap(*this, &TandemModel::delta1, info_of("delta1", true)); }
TransformFn TandemModel::alpha2_fn() const { return wrap(*this, &TandemModel::alpha2, info_of("alpha2", false)); }
TransformFn TandemModel::alpha2_stationary_fn() const {
    return wrap(*this, &TandemModel::alpha2_stationary, info_of("alpha2 (stationary)", false));
}
TransformFn TandemModel::delta2_fn() const { return wrap(*this, &TandemModel::delta2, info_of("delta2", true)); }

// ---------------------------------------------------------------------------

namespace {

void require_nonnegative(double s, const char* what) {
    if (!(s >= 0.0)) throw DomainError(std::string(what) + ": s must be non-negative");
}

void require_positive(double s, const char* what) {
    if (!(s > 0.0)) throw DomainError(std::string(what) + ": s must be positive");
}

}  // namespace

double tau11_lst(const SystemParams& params, double s) {
    require_nonnegative(s, "tau11_lst");
    return TandemModel(params).tau11(s).real();
}

double tau12_lst(const SystemParams& params, double s) {
    require_nonnegative(s, "tau12_lst");
    return TandemModel(params).tau12(s).real();
}

double tau2_lst(const SystemParams& params, double s) {
    require_nonnegative(s, "tau2_lst");
    return TandemModel(params).tau2(s).real();
}

double psi2_lst(const SystemParams& params, double s) {
    require_nonnegative(s, "psi2_lst");
    return TandemModel(params).psi2(s).real();
}

PriorityCases case_lsts_priority(const SystemParams& params, double s) {
    require_nonnegative(s, "case_lsts_priority");
    return TandemModel(params).priority_cases(s);
}

double alpha1_lst(const SystemParams& params, double s) {
    require_nonnegative(s, "alpha1_lst");
    return TandemModel(params).alpha1(s).real();
}

double tau1_lst(const SystemParams& params, double s) {
    require_nonnegative(s, "tau1_lst");
    return TandemModel(params).tau1(s).real();
}

double delta1_lst(const SystemParams& params, double s) {
    require_positive(s, "delta1_lst");
    return TandemModel(params).delta1(s).real();
}

double alpha2_lst(const SystemParams& params, double s) {
    require_nonnegative(s, "alpha2_lst");
    return TandemModel(params).alpha2(s).real();
}

double delta2_lst(const SystemParams& params, double s) {
    require_positive(s, "delta2_lst");
    return TandemModel(params).delta2(s).real();
}

// ---------------------------------------------------------------------------
// Closed-form means.

namespace {

double base_wait(const SystemParams& p) {
    return 0.5 * (p.lambda1() * p.svc1().second_moment() + p.lambda2() * p.svc2().second_moment());
}

double mean_T12(const SystemParams& p) { return p.b1() + base_wait(p) / (1.0 - p.rho1()); }

void require_class1(const SystemParams& p, const char* what) {
    if (!p.has_class1()) throw DomainError(std::string(what) + ": no priority traffic (p = 0)");
}

void require_class2(const SystemParams& p, const char* what) {
    if (!p.has_class2()) throw DomainError(std::string(what) + ": no non-priority traffic (p = 1)");
}

MeanCheck make_check(std::string quantity, double closed, double numeric, bool numeric_wins, std::string note) {
    MeanCheck c;
    c.quantity = std::move(quantity);
    c.closed_form = closed;
    c.numeric = numeric;
    c.agree = std::abs(closed - numeric) <= kMeanAgreement * std::max(1.0, std::abs(numeric));
    c.value = (c.agree || !numeric_wins) ? closed : numeric;
    c.note = std::move(note);
    return c;
}

}  // namespace

double mean_T1(const SystemParams& params) {
    require_class1(params, "mean_T1");
    return 1.0 / params.theta() + mean_T12(params);
}

double mean_T1_printed(const SystemParams& params) {
    require_class1(params, "mean_T1");
    const double b = params.b();
    return b + params.lambda1() * 2.0 * b * b / (2.0 * (1.0 - params.rho1())) + mean_T12(params);
}

double mean_T2(const SystemParams& params) {
    require_class2(params, "mean_T2");
    return params.b2() + base_wait(params) / ((1.0 - params.rho1()) * (1.0 - params.rho()));
}

double mean_A1_printed(const SystemParams& params) {
    require_class1(params, "mean_A1");
    const TandemModel model(params);
    const double l1 = params.lambda1();
    const double r2 = params.rho2();
    const double r11 = params.rho11();
    const double b = params.b();
    const double b1 = params.b1();
    const double res2 = params.svc2().second_moment() / (2.0 * params.b2());
    const double t11 = 1.0 / params.theta();
    const double t12 = mean_T12(params);
    const double tau_l1 = model.tau12(l1).real();
    const double tau_mu = model.tau12(params.mu()).real();
    const double weight = 1.0 - r2 + r2 * res2;
    return (1.0 / l1 + b1 + r2 * res2) * tau_l1 - r11 * (b + b * tau_mu) * weight +
           (1.0 - r11) * (b1 + t12 * tau_mu) + r11 * weight * (b1 + t11 + t12 * tau_mu) +
           r11 * (b1 + t11 + t12 * (1.0 - tau_mu));
}

double mean_A1(const SystemParams& params) { return check_mean_A1(params).value; }

double mean_delta1(const SystemParams& params) {
    require_class1(params, "mean_delta1");
    return numeric_mean_from_lst(TandemModel(params).delta1_fn());
}

double mean_delta1_lower(const SystemParams& params) {
    require_class1(params, "mean_delta1_lower");
    const double l1 = params.lambda1();
    const double mu = params.mu();
    const double th = params.theta();
    const double r1 = params.rho1();
    const double r11 = params.rho11();
    const double t1 = mean_T1(params);
    const double tau_l1 = TandemModel(params).tau12(l1).real();
    return params.b1() + tau_l1 / l1 + tau_l1 * t1 + r1 * r1 * t1 +
           r11 * r11 * (1.0 / th - r11 / mu + r11 / th + 1.0 / l1 + mu / (l1 * l1) - 1.0 / (r11 * r11) - 1.0 / r11);
}

double mean_A2_printed(const SystemParams& params) {
    require_class2(params, "mean_A2");
    const double l2 = params.lambda2();
    const double r1 = params.rho1();
    const double r = params.rho();
    const double psi_l2 = TandemModel(params).psi2(l2).real();
    return params.b2() + base_wait(params) / ((1.0 - r) * (1.0 - r1)) + params.b1() / (1.0 - r1) + psi_l2 / l2 +
           r1 * psi_l2 * params.b2() / (2.0 * (1.0 - r1) * (1.0 - r1));
}

double mean_A2(const SystemParams& params) { return check_mean_A2(params).value; }

double mean_delta2_printed(const SystemParams& params) {
    require_class2(params, "mean_delta2");
    const TandemModel model(params);
    const double l1 = params.lambda1();
    const double l2 = params.lambda2();
    const double r1 = params.rho1();
    const double r2 = params.rho2();
    const double r = params.rho();
    const double b1 = params.b1();
    const double b1_2 = params.svc1().second_moment();
    const double b1_3 = params.svc1().third_moment();
    const double psi_l2 = model.psi2(l2).real();
    auto psi = [&model](cplx s) { return model.psi2(s); };
    const double psi_prime = complex_step_derivative(psi, l2, std::max(1.0, 1.0 / l2)).value;
    const double head = params.b2() + base_wait(params) / ((1.0 - r) * (1.0 - r1)) + b1 / (1.0 - r1);
    return r2 / (1.0 - r1) * head +
           psi_l2 * (1.0 / l2 + r1 * l2 / 2.0 *
                                    (b1_3 / b1_2 / (3.0 * (1.0 - r1)) + l1 * b1_2 / ((1.0 - r1) * (1.0 - r1)))) +
           psi_l2 * (1.0 + r1 * r2 / (2.0 * (1.0 - r1) * (1.0 - r1))) * (params.b2() + psi_prime);
}

double mean_delta2(const SystemParams& params) { return check_mean_delta2(params).value; }

MeanCheck check_mean_T1(const SystemParams& params) {
    const double numeric = numeric_mean_from_lst(TandemModel(params).tau1_fn());
    return make_check("E[T1]", mean_T1(params), numeric, false,
                      "closed form is exact (M/M/1 + priority M/G/1); tau1 transform is approximate");
}

MeanCheck check_mean_T2(const SystemParams& params) {
    const double numeric = numeric_mean_from_lst(TandemModel(params).tau2_fn());
    return make_check("E[T2]", mean_T2(params), numeric, false, "");
}

MeanCheck check_mean_A1(const SystemParams& params) {
    const double numeric = numeric_mean_from_lst(TandemModel(params).alpha1_fn());
    return make_check("E[A1]", mean_A1_printed(params), numeric, true,
                      "numeric derivative of the case-sum PAoI transform is authoritative");
}

MeanCheck check_mean_A2(const SystemParams& params) {
    const double numeric = numeric_mean_from_lst(TandemModel(params).alpha2_fn());
    return make_check("E[A2]", mean_A2_printed(params), numeric, true,
                      "numeric derivative of the exact PAoI transform is authoritative");
}

MeanCheck check_mean_delta2(const SystemParams& params) {
    const double numeric = numeric_mean_from_lst(TandemModel(params).delta2_fn());
    return make_check("E[Delta2]", mean_delta2_printed(params), numeric, true,
                      "numeric derivative of (l2/s)(tau2 - alpha2) is authoritative");
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<double, 4> kCompareAt = {0.1, 0.5, 1.0, 2.0};

template <typename F, typename G>
FormComparison compare_forms(std::string quantity, F reference, G alternative, std::string note) {
    FormComparison out;
    out.quantity = std::move(quantity);
    out.note = std::move(note);
    for (double s : kCompareAt) {
        const double diff = std::abs(reference(s) - alternative(s));
        if (!(diff <= out.max_abs_diff)) {
            out.max_abs_diff = diff;
            out.at_s = s;
        }
    }
    return out;
}

std::string format_check(const MeanCheck& c) {
    std::ostringstream out;
    out.precision(10);
    out << c.quantity << ": closed form " << c.closed_form << " vs numeric derivative " << c.numeric << " (using "
        << c.value << ")";
    if (!c.note.empty()) out << "; " << c.note;
    return out.str();
}

std::string format_comparison(const FormComparison& c) {
    std::ostringstream out;
    out.precision(6);
    out << c.quantity << ": max |difference| " << c.max_abs_diff << " at s=" << c.at_s;
    if (!c.note.empty()) out << "; " << c.note;
    return out.str();
}

}  // namespace

AnalyticReport analyze(const SystemParams& params, const AnalyzeOptions& options) {
    AnalyticReport report{params, {}, {}, {}, {}, {}};
    const TandemModel model(params);

    if (params.has_class1()) {
        ClassMetrics& m = report.class1;
        m.applicable = true;
        m.label = kClass1Label;
        const MeanCheck t1 = check_mean_T1(params);
        const MeanCheck a1 = check_mean_A1(params);
        report.checks.push_back(t1);
        report.checks.push_back(a1);
        m.mean_delay = t1.value;
        m.mean_paoi = a1.value;
        m.mean_aoi = mean_delta1(params);
        m.mean_aoi_lower = mean_delta1_lower(params);
        m.alpha_deficit = 1.0 - model.alpha1(0.0).real();
        m.printed_alpha_deficit = 1.0 - model.alpha1_collapsed(0.0).real();

        auto real = [](auto fn) { return [fn](double s) { return fn(cplx(s, 0.0)).real(); }; };
        report.comparisons.push_back(compare_forms(
            "alpha1 case sum vs collapsed form", real([&](cplx s) { return model.alpha1(s); }),
            real([&](cplx s) { return model.alpha1_collapsed(s); }), "collapsed form loses mass 1 - tau12(l1) at s=0"));
        report.comparisons.push_back(compare_forms(
            "tau1 vs sum of delay cases", real([&](cplx s) { return model.tau1(s); }),
            real([&](cplx s) {
                const PriorityCases c = model.priority_cases(s);
                cplx sum = 0.0;
                for (const cplx& t : c.tau) sum += t;
                return sum;
            }),
            ""));
        report.comparisons.push_back(compare_forms(
            "delta1 via (l1/s)(tau1 - alpha1) vs expanded form", real([&](cplx s) { return model.delta1(s); }),
            real([&](cplx s) { return model.delta1_expanded(s); }), "expanded form kept for regression only"));
    }

    if (params.has_class2()) {
        ClassMetrics& m = report.class2;
        m.applicable = true;
        m.label = kClass2Label;
        const MeanCheck t2 = check_mean_T2(params);
        const MeanCheck a2 = check_mean_A2(params);
        const MeanCheck d2 = check_mean_delta2(params);
        report.checks.push_back(t2);
        report.checks.push_back(a2);
        report.checks.push_back(d2);
        m.mean_delay = t2.value;
        m.mean_paoi = a2.value;
        m.mean_aoi = d2.value;
        m.alpha_deficit = 1.0 - model.alpha2(0.0).real();
        m.printed_alpha_deficit = 1.0 - model.alpha2_stationary(0.0).real();

        auto real = [](auto fn) { return [fn](double s) { return fn(cplx(s, 0.0)).real(); }; };
        report.comparisons.push_back(compare_forms(
            "alpha2 exact vs stationary-rho1 form", real([&](cplx s) { return model.alpha2(s); }),
            real([&](cplx s) { return model.alpha2_stationary(s); }),
            "stationary form assumes the priority queue is in equilibrium when the node has just emptied"));
        report.comparisons.push_back(compare_forms(
            "delta2 via (l2/s)(tau2 - alpha2) vs expanded form", real([&](cplx s) { return model.delta2(s); }),
            real([&](cplx s) { return model.delta2_expanded(s); }), "expanded form kept for regression only"));
    }

    for (const MeanCheck& c : report.checks)
        if (!c.agree) report.discrepancies.push_back(format_check(c));
    for (const FormComparison& c : report.comparisons)
        if (!(c.max_abs_diff <= 1e-6)) report.discrepancies.push_back(format_comparison(c));

    if (!options.cdf_times.empty()) {
        auto fill = [&](ClassMetrics& m, const TransformFn& delay, const TransformFn& paoi, const TransformFn& aoi) {
            for (double t : options.cdf_times) {
                m.cdf.push_back({t, invert_lst_cdf(delay, t), invert_lst_cdf(paoi, t), invert_lst_cdf(aoi, t)});
            }
        };
        if (report.class1.applicable) fill(report.class1, model.tau1_fn(), model.alpha1_fn(), model.delta1_fn());
        if (report.class2.applicable) fill(report.class2, model.tau2_fn(), model.alpha2_fn(), model.delta2_fn());
    }
    return report;
}

}  // namespace aoi
