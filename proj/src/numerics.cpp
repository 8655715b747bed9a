#include "aoi/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "aoi/error.hpp"

namespace aoi {

namespace {

constexpr int kLevels = 14;

// Ridders-style extrapolation of D(h) whose error expands in even powers
// of h; the step is halved between rows.
DerivativeEstimate richardson(const std::function<double(double)>& diff, double h0) {
    std::array<std::array<double, kLevels>, kLevels> table{};
    DerivativeEstimate best{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity()};
    double h = h0;
    for (int i = 0; i < kLevels; ++i, h *= 0.5) {
        table[i][0] = diff(h);
        if (!std::isfinite(table[i][0])) {
            if (i == 0) continue;
            break;
        }
        double factor = 4.0;
        for (int j = 1; j <= i; ++j, factor *= 4.0) {
            table[i][j] = (factor * table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
            const double err = std::max(std::abs(table[i][j] - table[i][j - 1]),
                                        std::abs(table[i][j] - table[i - 1][j - 1]));
            if (std::isfinite(table[i][j]) && err <= best.error) {
                best = {table[i][j], err};
            }
        }
    }
    return best;
}

double scale_hint(const TransformFn& f) {
    if (f.info().mean && *f.info().mean > 0.0) return std::max(1.0, *f.info().mean);
    const double h = 1e-4;
    const double m = -f(cplx(0.0, h)).imag() / h;
    if (!std::isfinite(m) || m <= 0.0) return 1.0;
    return std::max(1.0, m);
}

}  // namespace

DerivativeEstimate complex_step_derivative(const std::function<cplx(cplx)>& f, double x, double scale) {
    auto diff = [&](double h) { return f(cplx(x, h)).imag() / h; };
    return richardson(diff, 0.1 / std::max(scale, 1e-12));
}

double numeric_mean_from_lst(const TransformFn& f) {
    const double scale = scale_hint(f);
    auto eval = [&f](cplx s) { return f(s); };
    const DerivativeEstimate d = complex_step_derivative(eval, 0.0, scale);
    const double mean = -d.value;
    if (!std::isfinite(mean))
        throw NumericError(f.name() + ": non-finite values near s=0", mean, d.error);
    if (d.error > 1e-6 * std::max(1.0, std::abs(mean)))
        throw NumericError(f.name() + ": derivative at 0 did not reach tolerance", mean, d.error);
    return mean;
}

double numeric_moment(const TransformFn& f, int k) {
    if (k < 1) throw DomainError("numeric_moment: order must be >= 1");
    if (k == 1) return numeric_mean_from_lst(f);
    const double f0 = f.value_at_zero();
    // g(y) = f(iy); g(-y) = conj(g(y)) for real-coefficient transforms.
    auto g = [&](double y) -> cplx {
        if (y == 0.0) return f0;
        const cplx v = f(cplx(0.0, std::abs(y)));
        return y > 0.0 ? v : std::conj(v);
    };
    std::vector<double> binom(k + 1, 1.0);
    for (int j = 1; j <= k; ++j) binom[j] = binom[j - 1] * (k - j + 1) / j;
    // g^(k)(0) = (-i)^k E[X^k].
    const cplx ik = std::pow(cplx(0.0, -1.0), k);
    auto diff = [&](double h) {
        cplx sum = 0.0;
        for (int j = 0; j <= k; ++j) {
            const double offset = (0.5 * k - j) * h;
            sum += ((j % 2) ? -binom[j] : binom[j]) * g(offset);
        }
        return (sum / std::pow(h, k) / ik).real();
    };
    const double scale = scale_hint(f);
    const DerivativeEstimate d = richardson(diff, 0.1 / scale);
    if (!std::isfinite(d.value)) throw NumericError(f.name() + ": non-finite moment", d.value, d.error);
    return d.value;
}

InversionResult invert_lst_cdf_detailed(const TransformFn& f, double t, const InversionOptions& options) {
    if (!(t >= 0.0)) throw DomainError("invert_lst_cdf: t must be non-negative");
    if (t == 0.0) return {0.0, 0.0, 0.0};
    if (options.terms < 1 || options.euler < 1) throw DomainError("invert_lst_cdf: bad term counts");

    const double x = options.a / (2.0 * t);
    const double h = M_PI / t;
    auto laplace = [&](cplx s) { return f(s) / s; };

    const int n = options.terms;
    const int m = options.euler;
    std::vector<double> partial(m + 1);
    double sum = 0.5 * laplace(cplx(x, 0.0)).real();
    for (int k = 1; k <= n; ++k) {
        const double sign = (k % 2) ? -1.0 : 1.0;
        sum += sign * laplace(cplx(x, k * h)).real();
    }
    partial[0] = sum;
    for (int j = 1; j <= m; ++j) {
        const int k = n + j;
        const double sign = (k % 2) ? -1.0 : 1.0;
        partial[j] = partial[j - 1] + sign * laplace(cplx(x, k * h)).real();
    }
    auto euler_average = [&](int order) {
        double acc = 0.0;
        double c = 1.0;  // binomial(order, j)
        for (int j = 0; j <= order; ++j) {
            acc += c * partial[j];
            c = c * (order - j) / (j + 1);
        }
        return acc / std::pow(2.0, order);
    };
    const double scale = std::exp(options.a / 2.0) / t;
    const double estimate = scale * euler_average(m);
    const double previous = scale * euler_average(m - 1);
    if (!std::isfinite(estimate)) throw NumericError(f.name() + ": inversion produced non-finite value", estimate, 0.0);
    const double residual = std::abs(estimate - previous);
    if (residual > options.tolerance)
        throw NumericError(f.name() + ": inversion residual above tolerance at t=" + std::to_string(t), estimate,
                           residual);
    return {std::clamp(estimate, 0.0, 1.0), estimate, residual};
}

double invert_lst_cdf(const TransformFn& f, double t, const InversionOptions& options) {
    return invert_lst_cdf_detailed(f, t, options).value;
}

std::vector<double> invert_lst_cdf_grid(const TransformFn& f, const std::vector<double>& times,
                                        const InversionOptions& options) {
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(invert_lst_cdf(f, t, options));
    return out;
}

}  // namespace aoi
