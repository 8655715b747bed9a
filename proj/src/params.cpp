#include "aoi/params.hpp"

#include <cmath>
#include <sstream>

#include "aoi/error.hpp"

namespace aoi {

SystemParams::SystemParams(double lambda, double p, double mu, ServiceDistribution svc1, ServiceDistribution svc2)
    : lambda_(lambda), p_(p), mu_(mu), svc1_(std::move(svc1)), svc2_(std::move(svc2)) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive and finite");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive and finite");
    if (!(rho() < 1.0)) {
        std::ostringstream msg;
        msg << "unstable: rho = " << rho() << " >= 1 at node 2";
        throw StabilityError(msg.str());
    }
    if (!(rho11() < 1.0)) {
        std::ostringstream msg;
        msg << "unstable: rho11 = " << rho11() << " >= 1 at node 1";
        throw StabilityError(msg.str());
    }
}

SystemParams SystemParams::exponential(double lambda, double p, double mu, double b1, double b2) {
    return SystemParams(lambda, p, mu, ServiceDistribution::exponential(1.0 / b1),
                        ServiceDistribution::exponential(1.0 / b2));
}

SystemParams SystemParams::from_utilisation(double rho, double p, double mu, ServiceDistribution svc1,
                                            ServiceDistribution svc2) {
    if (!(rho > 0.0)) throw DomainError("rho must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
    const double mean_service = p * svc1.mean() + (1.0 - p) * svc2.mean();
    return SystemParams(rho / mean_service, p, mu, std::move(svc1), std::move(svc2));
}

std::string SystemParams::describe() const {
    std::ostringstream out;
    out << "lambda=" << lambda_ << " p=" << p_ << " mu=" << mu_ << " svc1=" << svc1_.describe()
        << " svc2=" << svc2_.describe() << " (rho=" << rho() << ", rho1=" << rho1() << ", rho2=" << rho2()
        << ", rho11=" << rho11() << ")";
    return out.str();
}

}  // namespace aoi
