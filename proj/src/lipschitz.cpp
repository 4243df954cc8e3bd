#include "cevmc/lipschitz.hpp"

#include <cmath>

namespace cevmc {

double LipschitzApprox::phi(double x) const {
    const double g = gamma;
    if (x >= eps) return std::pow(x, -g / (1.0 - g));
    const double slope = -(g / (1.0 - g)) * std::pow(eps, -1.0 / (1.0 - g));
    const double intercept = (1.0 / (1.0 - g)) * std::pow(eps, -g / (1.0 - g));
    return slope * x + intercept;
}

double LipschitzApprox::phi_prime(double x) const {
    const double g = gamma;
    if (x >= eps) return -(g / (1.0 - g)) * std::pow(x, -1.0 / (1.0 - g));
    return -(g / (1.0 - g)) * std::pow(eps, -1.0 / (1.0 - g));
}

double LipschitzApprox::psi(double x) const {
    if (x >= eps) return 1.0 / x;
    return -x / (eps * eps) + 2.0 / eps;
}

double LipschitzApprox::psi_prime(double x) const {
    if (x >= eps) return -1.0 / (x * x);
    return -1.0 / (eps * eps);
}

double LipschitzApprox::phi_prime_bound() const {
    return (gamma / (1.0 - gamma)) * std::pow(eps, -1.0 / (1.0 - gamma));
}

double LipschitzApprox::psi_prime_bound() const { return 1.0 / (eps * eps); }

double approx_drift(const ModelParams& p, const LipschitzApprox& a, double x) {
    return p.kappa * p.mu * a.phi(x) - 0.5 * p.gamma * p.theta * p.theta * a.psi(x) - p.kappa * x;
}

double lipschitz_certificate(const ModelParams& p, double eps) {
    const double g = p.gamma;
    return p.kappa * p.mu * g / (1.0 - g) * std::pow(eps, -1.0 / (1.0 - g)) +
           0.5 * g * p.theta * p.theta / (eps * eps) + p.kappa;
}

double bounded_log_price(double eps, double x) {
    if (x < eps) return std::exp(x) - std::exp(eps) + eps;
    if (x < 1.0 / eps) return x;
    return -std::exp(-x + 1.0 / eps) + 1.0 / eps + 1.0;
}

} // namespace cevmc
