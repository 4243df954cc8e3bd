#pragma once

#include "cevmc/grid.hpp"
#include "cevmc/noise.hpp"
#include "cevmc/params.hpp"
#include "cevmc/path.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cevmc {

// Closed-form Malliavin derivative trajectories evaluated along one simulated
// path, all with respect to differentiation time t_r. Sequences have
// n_steps + 1 entries; every entry strictly before r_index is exactly zero.
// The W-derivative of the volatility has the exponential form
//
//   D_r sigma_t = (1-gamma) theta exp{ (1-gamma) int_r^t ( -kappa mu gamma/(1-gamma) sigma_s^(-1/(1-gamma))
//                                                          + gamma theta^2/(2 sigma_s^2) - kappa ) ds },
//
// and D_r nu_t = theta nu_t^gamma exp{...} is its chain-rule image. The
// log-price derivative assembles the dt- and dB-integrals of D nu; its
// W_hat-counterpart is the closed form sqrt(1-rho^2) sqrt(nu_r). All
// integrals are left-endpoint Riemann / left-point Ito sums on the grid,
// matching the Euler scheme's order. The W_hat-derivative of nu itself is
// identically zero and has no evaluator.
struct DerivativePath {
    std::size_t r_index = 0;
    std::vector<double> d_sigma;
    std::vector<double> d_nu;
    std::vector<double> d_X;
    std::vector<double> d_hat_X;
    std::vector<double> d_S;
    std::vector<double> d_hat_S;
};

// eps_num is the positivity floor applied to sigma (and, raised to
// 1/(1-gamma), to nu) before the singular integrand evaluations; pass the
// same value the path was simulated with. Throws DegeneratePath if a floored
// value is still non-positive.
std::vector<double> malliavin_d_sigma(const std::vector<double>& sigma, const ModelParams& p,
                                      const TimeGrid& grid, std::size_t r_index, double eps_num);

std::vector<double> malliavin_d_nu(const std::vector<double>& nu, const ModelParams& p,
                                   const TimeGrid& grid, std::size_t r_index, double eps_num);

// Returns {d_X, d_hat_X}:
//   D_u X_t = -1/2 int_u^t D_u nu_s ds + rho sqrt(nu_u) + 1/2 int_u^t nu_s^(-1/2) D_u nu_s dB_s,
//   Dhat_u X_t = sqrt(1-rho^2) sqrt(nu_u).
std::pair<std::vector<double>, std::vector<double>> malliavin_d_logprice(
    const PathSet& path, const ModelParams& p, const TimeGrid& grid, const NoiseGrid& noise,
    std::size_t u_index, double eps_num);

// Returns {d_S, d_hat_S} = S_t * {d_X, d_hat_X}.
std::pair<std::vector<double>, std::vector<double>> malliavin_d_price(
    const PathSet& path, const ModelParams& p, const TimeGrid& grid, const NoiseGrid& noise,
    std::size_t t_prime_index, double eps_num);

DerivativePath evaluate_derivative_path(const PathSet& path, const ModelParams& p,
                                        const TimeGrid& grid, const NoiseGrid& noise,
                                        std::size_t r_index, double eps_num);

// Terminal derivatives for every differentiation index at once, via prefix
// sums of the shared integrand: entry r holds D_{t_r} sigma_T (resp. nu_T).
// Same Riemann convention as the per-r evaluators.
std::vector<double> malliavin_d_sigma_terminal(const std::vector<double>& sigma,
                                               const ModelParams& p, const TimeGrid& grid,
                                               double eps_num);

std::vector<double> malliavin_d_nu_terminal(const std::vector<double>& nu, const ModelParams& p,
                                            const TimeGrid& grid, double eps_num);

// CSV dump of one derivative trajectory, one row per grid point:
//   k,t,d_sigma,d_nu,d_X,d_hat_X,d_S,d_hat_S
std::string derivative_path_csv(const DerivativePath& d, const TimeGrid& grid);

} // namespace cevmc
