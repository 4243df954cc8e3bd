#include "cevmc/path.hpp"

#include "cevmc/errors.hpp"
#include "cevmc/lipschitz.hpp"

#include <cmath>

namespace cevmc {

double default_eps_num(const ModelParams& p) { return 1e-3 * p.sigma0(); }

std::vector<double> simulate_sigma_path(const ModelParams& p, const TimeGrid& grid,
                                        const NoiseGrid& noise, double eps) {
    if (!(eps > 0.0)) throw ParamOutOfRange("eps", "(0, inf)");
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();
    const double om = 1.0 - p.gamma;
    const LipschitzApprox a{eps, p.gamma};

    std::vector<double> sigma(n + 1);
    sigma[0] = p.sigma0();
    for (std::size_t k = 0; k < n; ++k) {
        const double s = sigma[k];
        const double drift = p.kappa * p.mu * a.phi(s) -
                             0.5 * p.gamma * p.theta * p.theta * a.psi(s) - p.kappa * s;
        sigma[k + 1] = s + om * drift * dt + om * p.theta * noise.dW[k];
    }
    return sigma;
}

std::vector<double> simulate_ou_bound(const ModelParams& p, const TimeGrid& grid,
                                      const NoiseGrid& noise) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();
    const double om = 1.0 - p.gamma;
    const double c = constant_c(p);

    std::vector<double> u(n + 1);
    u[0] = p.sigma0();
    for (std::size_t k = 0; k < n; ++k)
        u[k + 1] = u[k] + om * (c - p.kappa * u[k]) * dt + om * p.theta * noise.dW[k];
    return u;
}

std::vector<double> nu_from_sigma(const std::vector<double>& sigma, double gamma, double eps_num,
                                  std::size_t* clamp_count) {
    std::vector<double> nu(sigma.size());
    const double inv_om = 1.0 / (1.0 - gamma);
    std::size_t clamps = 0;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        double s = sigma[k];
        if (s < eps_num) {
            s = eps_num;
            ++clamps;
        }
        nu[k] = std::pow(s, inv_om);
    }
    if (clamp_count) *clamp_count += clamps;
    return nu;
}

std::pair<std::vector<double>, std::vector<double>> simulate_asset_path(
    const ModelParams& p, const TimeGrid& grid, const NoiseGrid& noise,
    const std::vector<double>& nu, bool with_price_path) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();

    for (std::size_t k = 0; k < n; ++k)
        if (nu[k] < 0.0) throw NegativeVariance(k);

    std::vector<double> X(n + 1);
    X[0] = std::log(p.x);
    for (std::size_t k = 0; k < n; ++k)
        X[k + 1] = X[k] + (p.r - 0.5 * nu[k]) * dt + std::sqrt(nu[k]) * noise.dB[k];

    std::vector<double> S;
    if (with_price_path) {
        S.resize(n + 1);
        for (std::size_t k = 0; k <= n; ++k) S[k] = std::exp(X[k]);
    }
    return {std::move(X), std::move(S)};
}

PathSet simulate_path_set(const ModelParams& p, const TimeGrid& grid, const NoiseGrid& noise,
                          const SimOptions& opts) {
    const double eps_num = opts.eps_num > 0.0 ? opts.eps_num : default_eps_num(p);
    if (!(eps_num < epsilon_zero(p))) throw ParamOutOfRange("eps_num", "(0, eps0)");

    PathSet out;
    out.sigma = simulate_sigma_path(p, grid, noise, eps_num);
    out.nu = nu_from_sigma(out.sigma, p.gamma, eps_num, &out.clamp_count);
    auto [X, S] = simulate_asset_path(p, grid, noise, out.nu, opts.with_price_path);
    out.X = std::move(X);
    out.S = std::move(S);
    if (opts.eps_study > 0.0) out.sigma_eps = simulate_sigma_path(p, grid, noise, opts.eps_study);
    if (opts.with_ou_bound) out.u = simulate_ou_bound(p, grid, noise);
    return out;
}

std::vector<double> simulate_nu_full_truncation(const ModelParams& p, const TimeGrid& grid,
                                                const NoiseGrid& noise) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();

    std::vector<double> nu(n + 1);
    double state = p.nu0;
    nu[0] = p.nu0;
    for (std::size_t k = 0; k < n; ++k) {
        const double pos = state > 0.0 ? state : 0.0;
        state += p.kappa * (p.mu - pos) * dt + p.theta * std::pow(pos, p.gamma) * noise.dW[k];
        nu[k + 1] = state > 0.0 ? state : 0.0;
    }
    return nu;
}

} // namespace cevmc
