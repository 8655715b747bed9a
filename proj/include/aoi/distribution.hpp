#pragma once

#include <complex>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace aoi {

using cplx = std::complex<double>;
using Rng = std::mt19937_64;

enum class DistKind { exponential, deterministic, erlang, hyperexponential, gamma };

std::string_view to_string(DistKind kind);

/// Service-time law from a small catalog, with closed-form moments, LST,
/// CDF and sampling. Time unit is whatever the rates are expressed in.
class ServiceDistribution {
public:
    static ServiceDistribution exponential(double rate);
    static ServiceDistribution deterministic(double value);
    static ServiceDistribution erlang(int phases, double rate);
    /// Mixture of exponentials; probabilities must sum to 1.
    static ServiceDistribution hyperexponential(std::vector<double> probs, std::vector<double> rates);
    static ServiceDistribution gamma(double shape, double rate);

    /// Build from a textual kind and a target mean. Accepted forms:
    ///   "exponential" | "exp", "deterministic" | "det", "erlang:<k>",
    ///   "gamma:<shape>", "hyperexponential:<scv>" (balanced-means H2, scv > 1).
    /// A bare "erlang", "gamma" or "hyperexponential" uses k=2, shape=2, scv=4.
    static ServiceDistribution from_spec(std::string_view spec, double mean);

    DistKind kind() const noexcept { return kind_; }

    double mean() const noexcept { return m1_; }
    double second_moment() const noexcept { return m2_; }
    double third_moment() const noexcept { return m3_; }
    double variance() const noexcept { return m2_ - m1_ * m1_; }

    /// E[exp(-s S)] for s >= 0. Throws DomainError for s < 0.
    double lst(double s) const;
    /// Analytic continuation; no domain check (used for inversion and
    /// complex-step differentiation).
    cplx lst(cplx s) const;

    double cdf(double t) const;
    double sample(Rng& rng) const;

    /// Canonical spec string, accepted by from_spec() given mean().
    std::string spec() const;
    std::string describe() const;

    bool operator==(const ServiceDistribution&) const = default;

private:
    ServiceDistribution(DistKind kind, std::vector<double> a, std::vector<double> b);
    void compute_moments();

    DistKind kind_;
    // exponential: a={rate}; deterministic: a={d}; erlang: a={k, rate};
    // gamma: a={shape, rate}; hyperexponential: a=probs, b=rates.
    std::vector<double> a_;
    std::vector<double> b_;
    double m1_ = 0.0;
    double m2_ = 0.0;
    double m3_ = 0.0;
};

}  // namespace aoi
