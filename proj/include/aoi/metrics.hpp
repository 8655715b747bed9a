#pragma once

#include <cstddef>
#include <vector>

namespace aoi {

/// One delivered update: generation epoch and departure from the tandem.
struct Delivery {
    double t_gen = 0.0;
    double t_depart = 0.0;
};

/// Time average of the age sawtooth over [t_start, t_end]. Deliveries must be
/// sorted by departure. The age at t is t minus the generation time of the
/// freshest update delivered by t, so t_start may not precede the first
/// departure.
double aoi_time_average(const std::vector<Delivery>& deliveries, double t_start, double t_end);

/// A_i = t'_i - t_{i-1} for i >= 2 (1-based).
std::vector<double> peak_age_samples(const std::vector<Delivery>& deliveries);

/// Sample mean of exp(-s x).
double empirical_lst(const std::vector<double>& samples, double s);

/// Fraction of samples <= t for each t in the grid.
std::vector<double> empirical_cdf(const std::vector<double>& samples, const std::vector<double>& grid);

struct SampleSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double ci_halfwidth = 0.0;  ///< 95% batch-means half-width

    bool operator==(const SampleSummary&) const = default;
};

inline constexpr int kBatches = 20;

/// Mean, unbiased variance and a batch-means confidence half-width
/// (20 contiguous batches, Student t with 19 degrees of freedom).
SampleSummary summarize(const std::vector<double>& samples);

/// Half-width from per-batch estimates.
double batch_halfwidth(const std::vector<double>& batch_means);

/// Kolmogorov-Smirnov distance between the samples and an exponential law.
double ks_statistic_exponential(std::vector<double> samples, double rate);

/// Asymptotic p-value of the Kolmogorov distribution (Stephens correction).
double ks_pvalue(double statistic, std::size_t n);

/// Asymptotic critical value at the 1% level: 1.628 / sqrt(n).
double ks_critical_1pct(std::size_t n);

}  // namespace aoi
