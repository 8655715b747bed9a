#include "aoi/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aoi/error.hpp"

namespace aoi {

double aoi_time_average(const std::vector<Delivery>& deliveries, double t_start, double t_end) {
    if (deliveries.empty()) throw UndefinedMetricError("aoi_time_average: no deliveries");
    if (!(t_end > t_start)) throw UndefinedMetricError("aoi_time_average: empty horizon");
    if (t_start < deliveries.front().t_depart)
        throw UndefinedMetricError("aoi_time_average: horizon starts before the first delivery");

    // Index of the last delivery at or before t_start.
    auto it = std::upper_bound(deliveries.begin(), deliveries.end(), t_start,
                               [](double t, const Delivery& d) { return t < d.t_depart; });
    std::size_t k = static_cast<std::size_t>(it - deliveries.begin()) - 1;

    double area = 0.0;
    double t = t_start;
    double gen = deliveries[k].t_gen;
    while (t < t_end) {
        const double next = (k + 1 < deliveries.size()) ? std::min(deliveries[k + 1].t_depart, t_end) : t_end;
        // Age runs linearly from t - gen to next - gen.
        area += 0.5 * ((t - gen) + (next - gen)) * (next - t);
        t = next;
        ++k;
        if (k < deliveries.size() && deliveries[k].t_depart <= t) gen = deliveries[k].t_gen;
    }
    return area / (t_end - t_start);
}

std::vector<double> peak_age_samples(const std::vector<Delivery>& deliveries) {
    if (deliveries.size() < 2) throw UndefinedMetricError("peak_age_samples: need at least two deliveries");
    std::vector<double> out;
    out.reserve(deliveries.size() - 1);
    for (std::size_t i = 1; i < deliveries.size(); ++i) out.push_back(deliveries[i].t_depart - deliveries[i - 1].t_gen);
    return out;
}

double empirical_lst(const std::vector<double>& samples, double s) {
    if (samples.empty()) throw UndefinedMetricError("empirical_lst: no samples");
    if (!(s >= 0.0)) throw DomainError("empirical_lst: s must be non-negative");
    double sum = 0.0;
    for (double x : samples) sum += std::exp(-s * x);
    return sum / static_cast<double>(samples.size());
}

std::vector<double> empirical_cdf(const std::vector<double>& samples, const std::vector<double>& grid) {
    if (samples.empty()) throw UndefinedMetricError("empirical_cdf: no samples");
    std::vector<double> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid) {
        const auto n = std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
        out.push_back(static_cast<double>(n) / static_cast<double>(sorted.size()));
    }
    return out;
}

double batch_halfwidth(const std::vector<double>& batch_means) {
    const std::size_t m = batch_means.size();
    if (m < 2) return 0.0;
    const double mean = std::accumulate(batch_means.begin(), batch_means.end(), 0.0) / static_cast<double>(m);
    double ss = 0.0;
    for (double x : batch_means) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(m - 1));
    // 97.5% Student t quantile; only the 20-batch value is needed in practice.
    const double t = (m == kBatches) ? 2.093 : 1.96;
    return t * sd / std::sqrt(static_cast<double>(m));
}

SampleSummary summarize(const std::vector<double>& samples) {
    SampleSummary out;
    out.count = samples.size();
    if (samples.empty()) return out;
    const double n = static_cast<double>(samples.size());
    out.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : samples) ss += (x - out.mean) * (x - out.mean);
    out.variance = samples.size() > 1 ? ss / (n - 1.0) : 0.0;

    if (samples.size() >= static_cast<std::size_t>(kBatches)) {
        const std::size_t per = samples.size() / kBatches;
        std::vector<double> means;
        for (int b = 0; b < kBatches; ++b) {
            const auto first = samples.begin() + static_cast<std::ptrdiff_t>(b * per);
            means.push_back(std::accumulate(first, first + static_cast<std::ptrdiff_t>(per), 0.0) /
                            static_cast<double>(per));
        }
        out.ci_halfwidth = batch_halfwidth(means);
    }
    return out;
}

double ks_statistic_exponential(std::vector<double> samples, double rate) {
    if (samples.empty()) throw UndefinedMetricError("ks_statistic_exponential: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = 1.0 - std::exp(-rate * samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_pvalue(double statistic, std::size_t n) {
    if (n == 0) throw UndefinedMetricError("ks_pvalue: no samples");
    const double rn = std::sqrt(static_cast<double>(n));
    const double x = (rn + 0.12 + 0.11 / rn) * statistic;
    if (x < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

}  // namespace aoi
