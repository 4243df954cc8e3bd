#pragma once

#include "cevmc/params.hpp"

namespace cevmc {

// C1 piecewise surrogates for the singular drift terms of the transformed
// volatility SDE: phi approximates x^(-gamma/(1-gamma)) and psi approximates
// 1/x, each replaced below the threshold eps by its tangent line at eps.
// Both are defined on all of R, so an Euler step can never leave the domain,
// and both are globally Lipschitz with the explicit constants below.
//
// Knot convention: x == eps evaluates through the power branch; the branches
// agree there anyway, the convention only pins bitwise reproducibility.
struct LipschitzApprox {
    double eps;   // threshold, > 0
    double gamma; // CEV exponent, in (1/2, 1)

    double phi(double x) const;
    double phi_prime(double x) const;
    double psi(double x) const;
    double psi_prime(double x) const;

    // |phi'| <= gamma/(1-gamma) * eps^(-1/(1-gamma)) everywhere.
    double phi_prime_bound() const;
    // |psi'| <= 1/eps^2 everywhere.
    double psi_prime_bound() const;
};

// Regularized drift of the transformed volatility,
//   F_eps(x) = kappa mu phi(x) - (gamma theta^2 / 2) psi(x) - kappa x.
double approx_drift(const ModelParams& p, const LipschitzApprox& a, double x);

// Global Lipschitz constant of approx_drift:
//   L(eps) = kappa mu gamma/(1-gamma) eps^(-1/(1-gamma)) + gamma theta^2/(2 eps^2) + kappa.
double lipschitz_certificate(const ModelParams& p, double eps);

// Bounded, increasing cap of the log-price used in convergence studies:
//   exp(x) - exp(eps) + eps          for x < eps,
//   x                                for eps <= x < 1/eps,
//   -exp(-x + 1/eps) + 1/eps + 1     for x >= 1/eps,
// for 0 < eps < 1. Continuous at both knots and C1 at the upper one; the
// lower knot has slope gap exp(eps) - 1 as printed. Study/test use only, no
// runtime consumer.
double bounded_log_price(double eps, double x);

} // namespace cevmc
