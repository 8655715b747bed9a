#include "aoi/transform.hpp"

#include <cmath>

#include "aoi/error.hpp"
#include "aoi/numerics.hpp"

namespace aoi {

TransformFn::TransformFn(Evaluator eval, Info info) : eval_(std::move(eval)), info_(std::move(info)) {
    if (info_.proper && !info_.limit_at_zero && info_.singular_at_zero) info_.limit_at_zero = 1.0;
}

TransformFn TransformFn::of(const ServiceDistribution& dist, std::string name) {
    Info info;
    info.name = name.empty() ? dist.describe() : std::move(name);
    info.mean = dist.mean();
    return TransformFn([dist](cplx s) { return dist.lst(s); }, std::move(info));
}

double TransformFn::operator()(double s) const {
    if (!(s >= 0.0)) throw DomainError(info_.name + ": s must be non-negative");
    if (s == 0.0) return value_at_zero();
    return eval_(cplx(s, 0.0)).real();
}

cplx TransformFn::operator()(cplx s) const {
    if (s == cplx(0.0, 0.0)) return value_at_zero();
    return eval_(s);
}

double TransformFn::value_at_zero() const {
    if (!info_.singular_at_zero) return eval_(cplx(0.0, 0.0)).real();
    if (info_.limit_at_zero) return *info_.limit_at_zero;
    // One-sided limit with a first-order Richardson correction.
    const double h = kSingularProbe;
    const double f1 = eval_(cplx(h, 0.0)).real();
    const double f2 = eval_(cplx(2.0 * h, 0.0)).real();
    const double limit = 2.0 * f1 - f2;
    if (!std::isfinite(limit)) throw NumericError(info_.name + ": no finite limit at s=0", limit, f1 - f2);
    return limit;
}

cplx eval_near_removable(const std::function<cplx(cplx)>& f, cplx s, double pole) {
    const double delta = 1e-3 * std::max(std::abs(pole), 1e-3);
    if (std::abs(s - pole) >= 0.25 * delta) return f(s);
    // Four-point star average: the O(delta^2) terms cancel.
    const cplx i(0.0, 1.0);
    return 0.25 * (f(s + delta) + f(s - delta) + f(s + i * delta) + f(s - i * delta));
}

double residual_lst(const ServiceDistribution& dist, double s) {
    if (!(s >= 0.0)) throw DomainError("residual_lst: s must be non-negative");
    if (s == 0.0) return 1.0;
    return ((1.0 - dist.lst(s)) / (s * dist.mean()));
}

cplx residual_lst(const TransformFn& f, double mean, cplx s) {
    if (s == cplx(0.0, 0.0)) return 1.0;
    return (1.0 - f(s)) / (s * mean);
}

TransformFn residual_transform(const ServiceDistribution& dist) {
    TransformFn::Info info;
    info.name = "residual " + dist.describe();
    info.singular_at_zero = true;
    info.limit_at_zero = 1.0;
    info.mean = dist.second_moment() / (2.0 * dist.mean());
    const TransformFn beta = TransformFn::of(dist);
    const double mean = dist.mean();
    return TransformFn([beta, mean](cplx s) { return residual_lst(beta, mean, s); }, std::move(info));
}

namespace {

double mean_of(const TransformFn& f) {
    if (f.info().mean) return *f.info().mean;
    return numeric_mean_from_lst(f);
}

}  // namespace

FixedPointResult solve_busy_period(const TransformFn& beta1, double lambda1, cplx s,
                                   const FixedPointOptions& options) {
    if (!(lambda1 >= 0.0)) throw DomainError("busy period: arrival rate must be non-negative");
    if (s.real() < 0.0) throw DomainError("busy period: Re(s) must be non-negative");
    const double rho1 = lambda1 * mean_of(beta1);
    if (!(rho1 < 1.0)) throw StabilityError("busy period: rho1 = " + std::to_string(rho1) + " >= 1");
    if (s == cplx(0.0, 0.0)) return {1.0, 0.0, 0};

    auto map = [&](cplx g) { return beta1(s + lambda1 - lambda1 * g); };
    cplx g = 0.0;
    double residual = 0.0;
    for (int it = 1; it <= options.max_iterations; ++it) {
        const cplx next = map(g);
        residual = std::abs(next - g);
        g = (1.0 - options.damping) * g + options.damping * next;
        // Contraction with factor <= rho1; stop once the step is at rounding level.
        if (residual <= 1e-15 * std::max(1.0, std::abs(g))) {
            residual = std::abs(g - map(g));
            if (residual < options.tolerance) return {g, residual, it};
        }
    }
    residual = std::abs(g - map(g));
    if (residual < options.tolerance) return {g, residual, options.max_iterations};
    throw NumericError("busy period fixed point did not converge", g.real(), residual);
}

double busy_period_lst(const TransformFn& beta1, double lambda1, double s) {
    if (!(s >= 0.0)) throw DomainError("busy_period_lst: s must be non-negative");
    return solve_busy_period(beta1, lambda1, cplx(s, 0.0)).value.real();
}

cplx busy_period_lst(const TransformFn& beta1, double lambda1, cplx s) {
    return solve_busy_period(beta1, lambda1, s).value;
}

TransformFn busy_period_transform(const TransformFn& beta1, double lambda1) {
    TransformFn::Info info;
    info.name = "busy period of " + beta1.name();
    const double b1 = mean_of(beta1);
    const double rho1 = lambda1 * b1;
    if (!(rho1 < 1.0)) throw StabilityError("busy period: rho1 = " + std::to_string(rho1) + " >= 1");
    info.mean = b1 / (1.0 - rho1);
    return TransformFn([beta1, lambda1](cplx s) { return busy_period_lst(beta1, lambda1, s); },
                       std::move(info));
}

}  // namespace aoi
