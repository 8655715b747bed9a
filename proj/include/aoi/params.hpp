#pragma once

#include <string>

#include "aoi/distribution.hpp"

namespace aoi {

/// Two-hop tandem with head-of-line priority at node 2.
///
/// Updates are generated as a Poisson stream of rate `lambda`. With
/// probability p an update is a priority packet that visits node 1
/// (exponential service, rate mu) and then node 2; otherwise it enters
/// node 2 directly. Node 2 serves priority packets with `svc1` and the
/// others with `svc2`, never interrupting a service in progress.
class SystemParams {
public:
    /// Validates rates and ergodicity; throws DomainError for bad inputs and
    /// StabilityError when rho >= 1 or rho11 >= 1.
    SystemParams(double lambda, double p, double mu, ServiceDistribution svc1, ServiceDistribution svc2);

    /// Exponential services everywhere with means b = 1/mu, b1, b2.
    static SystemParams exponential(double lambda, double p, double mu = 1.0, double b1 = 1.0, double b2 = 1.0);

    /// Node-2 utilisation target rho; lambda = rho / (p b1 + (1-p) b2).
    static SystemParams from_utilisation(double rho, double p, double mu, ServiceDistribution svc1,
                                         ServiceDistribution svc2);

    double lambda() const noexcept { return lambda_; }
    double p() const noexcept { return p_; }
    double mu() const noexcept { return mu_; }
    const ServiceDistribution& svc1() const noexcept { return svc1_; }
    const ServiceDistribution& svc2() const noexcept { return svc2_; }

    double lambda1() const noexcept { return p_ * lambda_; }
    double lambda2() const noexcept { return (1.0 - p_) * lambda_; }
    double b() const noexcept { return 1.0 / mu_; }
    double b1() const noexcept { return svc1_.mean(); }
    double b2() const noexcept { return svc2_.mean(); }
    double rho1() const noexcept { return lambda1() * b1(); }
    double rho2() const noexcept { return lambda2() * b2(); }
    double rho() const noexcept { return rho1() + rho2(); }
    double rho11() const noexcept { return lambda1() / mu_; }
    double theta() const noexcept { return mu_ - lambda1(); }

    bool has_class1() const noexcept { return lambda1() > 0.0; }
    bool has_class2() const noexcept { return lambda2() > 0.0; }

    std::string describe() const;

    bool operator==(const SystemParams&) const = default;

private:
    double lambda_;
    double p_;
    double mu_;
    ServiceDistribution svc1_;
    ServiceDistribution svc2_;
};

}  // namespace aoi
