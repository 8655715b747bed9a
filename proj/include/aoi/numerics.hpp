#pragma once

#include <functional>
#include <vector>

#include "aoi/transform.hpp"

namespace aoi {

/// Derivative estimate with an error bound from the Richardson tableau.
struct DerivativeEstimate {
    double value = 0.0;
    double error = 0.0;
};

/// d/dx of a real-analytic function at real x, by complex-step
/// differentiation (Im f(x + ih) / h) refined with a Richardson tableau.
/// `scale` is a characteristic magnitude of 1/|x - nearest singularity|;
/// the first step is 0.1 / scale.
DerivativeEstimate complex_step_derivative(const std::function<cplx(cplx)>& f, double x, double scale = 1.0);

/// Mean -f'(0) of the law behind `f`. Relative error < 1e-6 for the catalog
/// transforms. Throws NumericError on non-finite values near 0 or when the
/// tableau cannot reach that accuracy.
double numeric_mean_from_lst(const TransformFn& f);

/// k-th raw moment E[X^k] = (-1)^k f^(k)(0), from central differences of
/// y -> f(iy) along the imaginary axis with Richardson refinement.
/// Accuracy degrades roughly like eps / h^k; intended for k <= 3.
double numeric_moment(const TransformFn& f, int k);

struct InversionOptions {
    double a = 18.4;     ///< discretisation parameter; error ~ exp(-a)
    int terms = 15;      ///< partial-sum terms before Euler averaging
    int euler = 11;      ///< binomial averaging order
    double tolerance = 1e-6;
};

struct InversionResult {
    double value = 0.0;     ///< clamped to [0, 1]
    double raw = 0.0;       ///< before clamping
    double residual = 0.0;  ///< |Euler(m) - Euler(m-1)|
};

/// F(t) for the law with LST `f`, by Euler-summation inversion of f(s)/s
/// (Abate-Whitt). t = 0 returns 0. Throws NumericError when the residual
/// exceeds options.tolerance.
InversionResult invert_lst_cdf_detailed(const TransformFn& f, double t, const InversionOptions& options = {});
double invert_lst_cdf(const TransformFn& f, double t, const InversionOptions& options = {});

/// CDF on a grid of times (pointwise; no monotone smoothing).
std::vector<double> invert_lst_cdf_grid(const TransformFn& f, const std::vector<double>& times,
                                        const InversionOptions& options = {});

}  // namespace aoi
