#pragma once

#include <functional>
#include <optional>
#include <string>

#include "aoi/distribution.hpp"

namespace aoi {

/// An evaluable Laplace-Stieltjes transform s -> E[exp(-s X)].
///
/// The evaluator works on complex arguments so the same object serves
/// real evaluation, complex-step differentiation and Euler inversion.
/// Formulas that are 0/0 at s = 0 set `singular_at_zero`; evaluation at
/// exactly zero then returns the stored limit (1 for proper transforms),
/// or a one-sided Richardson limit when no value is stored.
class TransformFn {
public:
    using Evaluator = std::function<cplx(cplx)>;

    struct Info {
        std::string name = "transform";
        bool proper = true;             ///< value(0) == 1
        bool singular_at_zero = false;  ///< formula is 0/0 at s = 0
        std::optional<double> limit_at_zero;
        std::optional<double> mean;     ///< known first moment, if any
    };

    TransformFn() = default;
    TransformFn(Evaluator eval, Info info);

    static TransformFn of(const ServiceDistribution& dist, std::string name = {});

    /// Real evaluation; s must be >= 0.
    double operator()(double s) const;
    /// Raw evaluation for complex s (no domain check). s == 0 maps to value_at_zero().
    cplx operator()(cplx s) const;

    double value_at_zero() const;

    const Info& info() const noexcept { return info_; }
    const std::string& name() const noexcept { return info_.name; }
    bool proper() const noexcept { return info_.proper; }
    explicit operator bool() const noexcept { return static_cast<bool>(eval_); }

private:
    Evaluator eval_;
    Info info_;
};

/// Point at which the one-sided limit towards a removable singularity is probed.
inline constexpr double kSingularProbe = 1e-8;

/// Evaluate `f` at `s`, replacing a neighbourhood of the removable point
/// `pole` by a symmetric Richardson average of nearby values.
cplx eval_near_removable(const std::function<cplx(cplx)>& f, cplx s, double pole);

/// LST of the residual (equilibrium) law of `dist`: (1 - beta(s)) / (s b).
double residual_lst(const ServiceDistribution& dist, double s);
cplx residual_lst(const TransformFn& f, double mean, cplx s);
TransformFn residual_transform(const ServiceDistribution& dist);

struct FixedPointOptions {
    double tolerance = 1e-12;   ///< required |gamma - beta1(s + l1 - l1 gamma)|
    int max_iterations = 10000;
    double damping = 1.0;       ///< 1 = plain iteration
};

struct FixedPointResult {
    cplx value;
    double residual = 0.0;
    int iterations = 0;
};

/// Busy-period LST gamma(s): the fixed point of gamma = beta1(s + l1 - l1 gamma)
/// in the unit disc, found by iteration from gamma = 0.
///
/// Throws StabilityError when lambda1 * b1 >= 1 and NumericError when the
/// iteration budget is exhausted.
FixedPointResult solve_busy_period(const TransformFn& beta1, double lambda1, cplx s,
                                   const FixedPointOptions& options = {});

double busy_period_lst(const TransformFn& beta1, double lambda1, double s);
cplx busy_period_lst(const TransformFn& beta1, double lambda1, cplx s);
TransformFn busy_period_transform(const TransformFn& beta1, double lambda1);

}  // namespace aoi
