#pragma once

#include "cevmc/params.hpp"

namespace cevmc {

// Deterministic-volatility limit used as an independent pricing oracle. With
// theta -> 0 the variance SDE degenerates to the ODE dnu = kappa (mu - nu) dt,
// whose integral over [0, T] is available in closed form; the model then
// prices as Black-Scholes with that total variance.
struct BsReference {
    double price = 0.0;              // call price
    double delta = 0.0;              // in (0, 1)
    double rho = 0.0;                // K T exp(-rT) Phi(d2)
    double effective_variance = 0.0; // mu T + (nu0 - mu)(1 - exp(-kappa T)) / kappa
};

BsReference bs_limit_reference(const ModelParams& p, double strike);

} // namespace cevmc
