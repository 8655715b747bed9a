#include "aoi/distribution.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

#include "aoi/error.hpp"

namespace aoi {

std::string_view to_string(DistKind kind) {
    switch (kind) {
        case DistKind::exponential: return "exponential";
        case DistKind::deterministic: return "deterministic";
        case DistKind::erlang: return "erlang";
        case DistKind::hyperexponential: return "hyperexponential";
        case DistKind::gamma: return "gamma";
    }
    return "unknown";
}

ServiceDistribution::ServiceDistribution(DistKind kind, std::vector<double> a, std::vector<double> b)
    : kind_(kind), a_(std::move(a)), b_(std::move(b)) {
    compute_moments();
}

ServiceDistribution ServiceDistribution::exponential(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("exponential: rate must be positive");
    return ServiceDistribution(DistKind::exponential, {rate}, {});
}

ServiceDistribution ServiceDistribution::deterministic(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("deterministic: value must be positive");
    return ServiceDistribution(DistKind::deterministic, {value}, {});
}

ServiceDistribution ServiceDistribution::erlang(int phases, double rate) {
    if (phases < 1) throw DomainError("erlang: need at least one phase");
    if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("erlang: rate must be positive");
    return ServiceDistribution(DistKind::erlang, {static_cast<double>(phases), rate}, {});
}

ServiceDistribution ServiceDistribution::hyperexponential(std::vector<double> probs, std::vector<double> rates) {
    if (probs.empty() || probs.size() != rates.size())
        throw DomainError("hyperexponential: probabilities and rates must be non-empty and equal length");
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] >= 0.0)) throw DomainError("hyperexponential: negative branch probability");
        if (!(rates[i] > 0.0)) throw DomainError("hyperexponential: rates must be positive");
    }
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("hyperexponential: probabilities must sum to 1");
    return ServiceDistribution(DistKind::hyperexponential, std::move(probs), std::move(rates));
}

ServiceDistribution ServiceDistribution::gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) throw DomainError("gamma: shape and rate must be positive");
    return ServiceDistribution(DistKind::gamma, {shape, rate}, {});
}

namespace {

std::pair<std::string, std::string> split_spec(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) return {std::string(spec), {}};
    return {std::string(spec.substr(0, colon)), std::string(spec.substr(colon + 1))};
}

double parse_number(const std::string& text, std::string_view what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw DomainError("cannot parse " + std::string(what) + " '" + text + "'");
    }
}

}  // namespace

ServiceDistribution ServiceDistribution::from_spec(std::string_view spec, double mean) {
    if (!(mean > 0.0) || !std::isfinite(mean)) throw DomainError("service mean must be positive");
    const auto [name, arg] = split_spec(spec);
    if (name == "exponential" || name == "exp") return exponential(1.0 / mean);
    if (name == "deterministic" || name == "det") return deterministic(mean);
    if (name == "erlang") {
        const double k = arg.empty() ? 2.0 : parse_number(arg, "erlang phases");
        if (k < 1.0 || k != std::floor(k)) throw DomainError("erlang phases must be a positive integer");
        return erlang(static_cast<int>(k), k / mean);
    }
    if (name == "gamma") {
        const double shape = arg.empty() ? 2.0 : parse_number(arg, "gamma shape");
        return gamma(shape, shape / mean);
    }
    if (name == "hyperexponential" || name == "hyperexp" || name == "h2") {
        const double scv = arg.empty() ? 4.0 : parse_number(arg, "hyperexponential scv");
        if (!(scv > 1.0)) throw DomainError("hyperexponential scv must exceed 1");
        // Balanced means: p1/r1 = p2/r2 = mean/2.
        const double p1 = 0.5 * (1.0 + std::sqrt((scv - 1.0) / (scv + 1.0)));
        const double p2 = 1.0 - p1;
        return hyperexponential({p1, p2}, {2.0 * p1 / mean, 2.0 * p2 / mean});
    }
    throw DomainError("unknown service distribution '" + std::string(spec) + "'");
}

void ServiceDistribution::compute_moments() {
    switch (kind_) {
        case DistKind::exponential: {
            const double r = a_[0];
            m1_ = 1.0 / r;
            m2_ = 2.0 / (r * r);
            m3_ = 6.0 / (r * r * r);
            break;
        }
        case DistKind::deterministic: {
            const double d = a_[0];
            m1_ = d;
            m2_ = d * d;
            m3_ = d * d * d;
            break;
        }
        case DistKind::erlang:
        case DistKind::gamma: {
            const double k = a_[0];
            const double r = a_[1];
            m1_ = k / r;
            m2_ = k * (k + 1.0) / (r * r);
            m3_ = k * (k + 1.0) * (k + 2.0) / (r * r * r);
            break;
        }
        case DistKind::hyperexponential: {
            m1_ = m2_ = m3_ = 0.0;
            for (std::size_t i = 0; i < a_.size(); ++i) {
                const double p = a_[i];
                const double r = b_[i];
                m1_ += p / r;
                m2_ += 2.0 * p / (r * r);
                m3_ += 6.0 * p / (r * r * r);
            }
            break;
        }
    }
}

double ServiceDistribution::lst(double s) const {
    if (!(s >= 0.0)) throw DomainError("lst: s must be non-negative");
    if (s == 0.0) return 1.0;
    return lst(cplx(s, 0.0)).real();
}

cplx ServiceDistribution::lst(cplx s) const {
    switch (kind_) {
        case DistKind::exponential: return a_[0] / (a_[0] + s);
        case DistKind::deterministic: return std::exp(-s * a_[0]);
        case DistKind::erlang: {
            const cplx base = a_[1] / (a_[1] + s);
            return std::pow(base, static_cast<int>(a_[0]));
        }
        case DistKind::gamma: return std::pow(a_[1] / (a_[1] + s), a_[0]);
        case DistKind::hyperexponential: {
            cplx sum = 0.0;
            for (std::size_t i = 0; i < a_.size(); ++i) sum += a_[i] * b_[i] / (b_[i] + s);
            return sum;
        }
    }
    return 0.0;
}

double ServiceDistribution::cdf(double t) const {
    if (t <= 0.0) return 0.0;
    switch (kind_) {
        case DistKind::exponential: return -std::expm1(-a_[0] * t);
        case DistKind::deterministic: return t >= a_[0] ? 1.0 : 0.0;
        case DistKind::erlang:
        case DistKind::gamma: return boost::math::gamma_p(a_[0], a_[1] * t);
        case DistKind::hyperexponential: {
            double f = 0.0;
            for (std::size_t i = 0; i < a_.size(); ++i) f += a_[i] * -std::expm1(-b_[i] * t);
            return f;
        }
    }
    return 0.0;
}

double ServiceDistribution::sample(Rng& rng) const {
    switch (kind_) {
        case DistKind::exponential: return std::exponential_distribution<double>(a_[0])(rng);
        case DistKind::deterministic: return a_[0];
        case DistKind::erlang: {
            std::exponential_distribution<double> phase(a_[1]);
            double sum = 0.0;
            for (int i = 0; i < static_cast<int>(a_[0]); ++i) sum += phase(rng);
            return sum;
        }
        case DistKind::gamma: return std::gamma_distribution<double>(a_[0], 1.0 / a_[1])(rng);
        case DistKind::hyperexponential: {
            std::discrete_distribution<std::size_t> branch(a_.begin(), a_.end());
            return std::exponential_distribution<double>(b_[branch(rng)])(rng);
        }
    }
    return 0.0;
}

std::string ServiceDistribution::spec() const {
    std::ostringstream out;
    out.precision(17);
    switch (kind_) {
        case DistKind::exponential: return "exponential";
        case DistKind::deterministic: return "deterministic";
        case DistKind::erlang: out << "erlang:" << static_cast<int>(a_[0]); break;
        case DistKind::gamma: out << "gamma:" << a_[0]; break;
        case DistKind::hyperexponential: out << "hyperexponential:" << (variance() / (m1_ * m1_)); break;
    }
    return out.str();
}

std::string ServiceDistribution::describe() const {
    std::ostringstream out;
    out << to_string(kind_) << "(";
    switch (kind_) {
        case DistKind::exponential: out << "rate=" << a_[0]; break;
        case DistKind::deterministic: out << "d=" << a_[0]; break;
        case DistKind::erlang: out << "k=" << static_cast<int>(a_[0]) << ", rate=" << a_[1]; break;
        case DistKind::gamma: out << "shape=" << a_[0] << ", rate=" << a_[1]; break;
        case DistKind::hyperexponential:
            for (std::size_t i = 0; i < a_.size(); ++i)
                out << (i ? ", " : "") << "p" << i + 1 << "=" << a_[i] << " rate" << i + 1 << "=" << b_[i];
            break;
    }
    out << ")";
    return out.str();
}

}  // namespace aoi
