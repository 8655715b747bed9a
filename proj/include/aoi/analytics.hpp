#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "aoi/params.hpp"
#include "aoi/transform.hpp"

namespace aoi {

/// Joint-interval LSTs of the priority-packet cases. C1/C3 share
/// (eta13, xi13) and C4/C6 share (eta46, xi46).
struct PriorityCaseTerms {
    cplx eta13, xi13;
    cplx eta2, xi2;
    cplx eta46, xi46;
    cplx eta5, xi5;
};

/// Per-case PAoI and delay contributions alpha(s, C_m), tau(s, C_m), m = 1..6
/// (index 0 holds C1).
struct PriorityCases {
    std::array<cplx, 6> alpha;
    std::array<cplx, 6> tau;
};

/// PAoI contributions of non-priority packets: B1 (node empty on arrival),
/// B2 (arrives during a priority busy period), B3 (arrives before the
/// previous packet's interval Psi ends).
struct NonPriorityCases {
    cplx b1, b2, b3;
};

/// All transforms of the tandem, evaluated in complex arithmetic.
///
/// Class-1 (priority) results rely on the approximation that a priority
/// packet finds no non-priority packet at node 2 with probability 1 - rho2;
/// class-2 results are exact.
class TandemModel {
public:
    explicit TandemModel(SystemParams params);

    const SystemParams& params() const noexcept { return params_; }

    cplx beta(cplx s) const;   ///< node-1 service, exponential(mu)
    cplx beta1(cplx s) const;  ///< node-2 priority service
    cplx beta2(cplx s) const;  ///< node-2 non-priority service
    cplx residual2(cplx s) const;        ///< residual of S2: (1 - beta2)/(s b2)
    cplx gamma(cplx s) const;            ///< priority busy period G1
    cplx gamma_residual(cplx s) const;   ///< residual of G1
    cplx sigma(cplx s) const;            ///< s + l1 - l1 gamma(s)
    cplx nu(cplx s) const;               ///< 1 - rho2 + rho2 residual2(s)

    cplx tau11(cplx s) const;
    cplx tau12(cplx s) const;
    cplx tau2(cplx s) const;
    cplx omega2(cplx s) const;
    cplx psi2(cplx s) const;

    PriorityCaseTerms case_terms(cplx s) const;
    PriorityCases priority_cases(cplx s) const;
    cplx alpha1(cplx s) const;            ///< sum of the six case contributions
    cplx alpha1_collapsed(cplx s) const;  ///< closed bracket form of the same sum as printed
    cplx tau1(cplx s) const;
    cplx delta1(cplx s) const;            ///< (l1/s)(tau1 - alpha1)
    cplx delta1_expanded(cplx s) const;   ///< expanded AoI form as printed

    NonPriorityCases nonpriority_cases(cplx s) const;
    cplx alpha2(cplx s) const;            ///< exact: B1 + B2 + B3
    cplx alpha2_stationary(cplx s) const; ///< B1/B2 weighted by stationary rho1, as printed
    cplx delta2(cplx s) const;            ///< (l2/s)(tau2 - alpha2)
    cplx delta2_expanded(cplx s) const;   ///< expanded AoI form as printed

    /// Evaluable wrappers, named after the member they call.
    TransformFn tau11_fn() const;
    TransformFn tau12_fn() const;
    TransformFn tau2_fn() const;
    TransformFn psi2_fn() const;
    TransformFn tau1_fn() const;
    TransformFn alpha1_fn() const;
    TransformFn alpha1_collapsed_fn() const;
    TransformFn delta1_fn() const;
    TransformFn alpha2_fn() const;
    TransformFn alpha2_stationary_fn() const;
    TransformFn delta2_fn() const;

private:
    void require_class1(const char* what) const;
    void require_class2(const char* what) const;

    SystemParams params_;
    TransformFn beta1_fn_;
};

// Single-point entry points. s must be >= 0 unless stated otherwise.
double tau11_lst(const SystemParams& params, double s);
double tau12_lst(const SystemParams& params, double s);
double tau2_lst(const SystemParams& params, double s);
double psi2_lst(const SystemParams& params, double s);
PriorityCases case_lsts_priority(const SystemParams& params, double s);
double alpha1_lst(const SystemParams& params, double s);
double tau1_lst(const SystemParams& params, double s);
double delta1_lst(const SystemParams& params, double s);  ///< s > 0
double alpha2_lst(const SystemParams& params, double s);
double delta2_lst(const SystemParams& params, double s);  ///< s > 0

/// A closed-form mean next to the numeric derivative of its transform.
struct MeanCheck {
    std::string quantity;
    double closed_form = 0.0;
    double numeric = 0.0;
    double value = 0.0;   ///< what the mean_* function returns
    bool agree = true;    ///< |closed - numeric| <= 1e-6 * max(1, |numeric|)
    std::string note;
};

inline constexpr double kMeanAgreement = 1e-6;

/// Exact E[T1] = 1/(mu - l1) + b1 + W0/(1 - rho1).
double mean_T1(const SystemParams& params);
/// E[T1] with the (1 - rho1) denominator on the node-1 term, as printed.
double mean_T1_printed(const SystemParams& params);
double mean_T2(const SystemParams& params);
double mean_A1(const SystemParams& params);
double mean_A1_printed(const SystemParams& params);
double mean_delta1(const SystemParams& params);
double mean_delta1_lower(const SystemParams& params);
double mean_A2(const SystemParams& params);
double mean_A2_printed(const SystemParams& params);
double mean_delta2(const SystemParams& params);
double mean_delta2_printed(const SystemParams& params);

MeanCheck check_mean_T1(const SystemParams& params);
MeanCheck check_mean_T2(const SystemParams& params);
MeanCheck check_mean_A1(const SystemParams& params);
MeanCheck check_mean_A2(const SystemParams& params);
MeanCheck check_mean_delta2(const SystemParams& params);

/// Two forms of the same transform compared on a few positive s values.
struct FormComparison {
    std::string quantity;
    double max_abs_diff = 0.0;
    double at_s = 0.0;
    std::string note;
};

struct CdfPoint {
    double t = 0.0;
    double delay = 0.0;
    double paoi = 0.0;
    double aoi = 0.0;
};

struct ClassMetrics {
    bool applicable = false;
    std::string label;  ///< "exact" or "approximate (...)"
    double mean_delay = 0.0;
    double mean_paoi = 0.0;
    double mean_aoi = 0.0;
    std::optional<double> mean_aoi_lower;
    double alpha_deficit = 0.0;  ///< 1 - alpha_j(0) of the transform used
    std::optional<double> printed_alpha_deficit;
    std::vector<CdfPoint> cdf;
};

struct AnalyzeOptions {
    std::vector<double> cdf_times;  ///< empty: no CDF samples
};

struct AnalyticReport {
    SystemParams params;
    ClassMetrics class1;
    ClassMetrics class2;
    std::vector<MeanCheck> checks;
    std::vector<FormComparison> comparisons;
    /// Every check that disagrees and every comparison above 1e-6.
    std::vector<std::string> discrepancies;
};

inline constexpr const char* kClass1Label = "approximate (1-rho2 independence assumption)";
inline constexpr const char* kClass2Label = "exact";

AnalyticReport analyze(const SystemParams& params, const AnalyzeOptions& options = {});

}  // namespace aoi
