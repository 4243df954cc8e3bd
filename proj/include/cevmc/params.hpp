#pragma once

namespace cevmc {

// Market and model constants for the CEV-type Heston dynamics
//
//   dS  = S (r dt + sqrt(nu) dB),
//   dnu = kappa (mu - nu) dt + theta nu^gamma dW,   corr(B, W) = rho,
//
// with gamma in (1/2, 1). All rate-like quantities are per unit time.
struct ModelParams {
    double x = 100.0;    // initial asset price, > 0
    double nu0 = 0.04;   // initial variance, > 0
    double r = 0.0;      // risk-free rate
    double kappa = 1.0;  // mean-reversion speed, > 0
    double mu = 0.04;    // long-run variance level, > 0
    double theta = 0.3;  // vol-of-vol, > 0
    double gamma = 0.75; // CEV exponent, strictly in (1/2, 1)
    double rho = 0.0;    // Brownian correlation, strictly in (-1, 1)
    double T = 1.0;      // maturity, > 0

    // Initial value of the transformed volatility sigma = nu^(1-gamma).
    double sigma0() const;
};

// Closed-form drift bounds of the transformed volatility SDE.
struct DriftBounds {
    double c;  // lower bound of kappa*mu*Phi - (gamma*theta^2/2)*Psi over x > 0; always < 0
    double xi; // upper bound of its derivative, uniform in the threshold eps; always > 0
};

// Validates every invariant, returning p unchanged; throws ParamOutOfRange
// naming the offending field otherwise.
ModelParams validate_params(const ModelParams& p);

// c = -(2 kappa mu / (theta^2 (1-gamma)))^(-gamma/(2gamma-1)) * (1-gamma)/(kappa mu (2gamma-1))
double constant_c(const ModelParams& p);

// xi = (kappa mu / (theta^2 (1-gamma)^2))^(-1/(2gamma-1)) * kappa mu gamma (2gamma-1) / (2 (1-gamma)^2)
double constant_xi(const ModelParams& p);

DriftBounds compute_drift_bounds(const ModelParams& p);

// Threshold below which the drift-derivative of the linear branch is
// negative: the root of
//
//   -kappa mu gamma/(1-gamma) e^(-1/(1-gamma)) + gamma theta^2 / (2 e^2) = 0,
//
// i.e. eps0 = (2 kappa mu / (theta^2 (1-gamma)))^((1-gamma)/(2gamma-1)).
// For every eps < eps0 the derivative bound xi holds on all of R.
double epsilon_zero(const ModelParams& p);

} // namespace cevmc
