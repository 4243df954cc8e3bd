#pragma once

#include "cevmc/grid.hpp"
#include "cevmc/noise.hpp"
#include "cevmc/params.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace cevmc {

// One simulated trajectory on the grid (all sequences have n_steps + 1
// entries, index k <-> time k*dt). nu[k] is exactly
// max(sigma[k], eps_num)^(1/(1-gamma)) and S[k] = exp(X[k]) with X[0] = ln x.
struct PathSet {
    std::vector<double> sigma;
    std::vector<double> nu;
    std::vector<double> X;
    std::vector<double> S;
    std::vector<double> sigma_eps; // study approximation, empty unless requested
    std::vector<double> u;         // OU lower bound, empty unless requested
    std::size_t clamp_count = 0;   // positivity floors applied in the sigma -> nu map
};

struct SimOptions {
    double eps_num = 0.0;   // numerical safeguard; <= 0 selects 1e-3 * sigma0
    double eps_study = 0.0; // > 0: also simulate sigma_eps at this threshold
    bool with_ou_bound = false;
    bool with_price_path = true; // fill S (X is always filled)
};

// Default numerical safeguard, 1e-3 * sigma0.
double default_eps_num(const ModelParams& p);

// Euler scheme for the transformed volatility, drift regularized at `eps`:
//
//   sigma[k+1] = sigma[k]
//              + (1-gamma) * (kappa mu phi(sigma[k]) - gamma theta^2/2 psi(sigma[k]) - kappa sigma[k]) * dt
//              + (1-gamma) * theta * dW[k],
//
// sigma[0] = nu0^(1-gamma). The same recursion serves both the production
// path (eps = small numerical safeguard) and the study approximation
// (caller-chosen eps): above the threshold the two drifts agree exactly, so
// paths whose running minimum stays above both thresholds coincide bitwise.
std::vector<double> simulate_sigma_path(const ModelParams& p, const TimeGrid& grid,
                                        const NoiseGrid& noise, double eps);

// Ornstein-Uhlenbeck comparison process driven by the same dW:
//   u[k+1] = u[k] + (1-gamma) (c - kappa u[k]) dt + (1-gamma) theta dW[k],
// u[0] = sigma0, with c the closed-form drift floor.
std::vector<double> simulate_ou_bound(const ModelParams& p, const TimeGrid& grid,
                                      const NoiseGrid& noise);

// sigma -> nu map with positivity floor; counts floor events.
std::vector<double> nu_from_sigma(const std::vector<double>& sigma, double gamma, double eps_num,
                                  std::size_t* clamp_count = nullptr);

// Log-price Euler recursion and its exponential:
//   X[k+1] = X[k] + (r - nu[k]/2) dt + sqrt(nu[k]) dB[k],  X[0] = ln x,  S[k] = exp(X[k]).
// Throws NegativeVariance if any nu[k] < 0.
std::pair<std::vector<double>, std::vector<double>> simulate_asset_path(
    const ModelParams& p, const TimeGrid& grid, const NoiseGrid& noise,
    const std::vector<double>& nu, bool with_price_path = true);

// Full pipeline for one path.
PathSet simulate_path_set(const ModelParams& p, const TimeGrid& grid, const NoiseGrid& noise,
                          const SimOptions& opts = {});

// Cross-check scheme for convergence studies only: full-truncation Euler
// directly on the variance,
//   nu[k+1] = nu[k] + kappa (mu - nu[k]^+) dt + theta (nu[k]^+)^gamma dW[k],
// returning the clamped values nu[k]^+.
std::vector<double> simulate_nu_full_truncation(const ModelParams& p, const TimeGrid& grid,
                                                const NoiseGrid& noise);

} // namespace cevmc
