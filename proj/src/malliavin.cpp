#include "cevmc/malliavin.hpp"

#include "cevmc/csv.hpp"
#include "cevmc/errors.hpp"

#include <cmath>

namespace cevmc {

namespace {

double floored(double v, double floor_at, std::size_t k) {
    const double s = v < floor_at ? floor_at : v;
    if (!(s > 0.0)) throw DegeneratePath(k);
    return s;
}

// Integrand of the sigma-derivative exponent (without the leading 1-gamma).
double sigma_integrand(const ModelParams& p, double s) {
    const double g = p.gamma;
    const double om = 1.0 - g;
    return -p.kappa * p.mu * g / om * std::pow(s, -1.0 / om) +
           0.5 * g * p.theta * p.theta / (s * s) - p.kappa;
}

// Same quantity written in the variance variable.
double nu_integrand(const ModelParams& p, double v) {
    const double g = p.gamma;
    const double om = 1.0 - g;
    return -p.kappa * p.mu * g / (om * v) +
           0.5 * g * p.theta * p.theta * std::pow(v, -2.0 * om) - p.kappa;
}

} // namespace

std::vector<double> malliavin_d_sigma(const std::vector<double>& sigma, const ModelParams& p,
                                      const TimeGrid& grid, std::size_t r_index, double eps_num) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();
    const double om = 1.0 - p.gamma;
    const double prefactor = om * p.theta;

    std::vector<double> d(n + 1, 0.0);
    if (r_index > n) return d;
    double integral = 0.0;
    d[r_index] = prefactor;
    for (std::size_t k = r_index; k < n; ++k) {
        integral += sigma_integrand(p, floored(sigma[k], eps_num, k)) * dt;
        d[k + 1] = prefactor * std::exp(om * integral);
    }
    return d;
}

std::vector<double> malliavin_d_nu(const std::vector<double>& nu, const ModelParams& p,
                                   const TimeGrid& grid, std::size_t r_index, double eps_num) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();
    const double om = 1.0 - p.gamma;
    const double nu_floor = std::pow(eps_num, 1.0 / om);

    std::vector<double> d(n + 1, 0.0);
    if (r_index > n) return d;
    double integral = 0.0;
    d[r_index] = p.theta * std::pow(floored(nu[r_index], nu_floor, r_index), p.gamma);
    for (std::size_t k = r_index; k < n; ++k) {
        integral += nu_integrand(p, floored(nu[k], nu_floor, k)) * dt;
        d[k + 1] = p.theta * std::pow(floored(nu[k + 1], nu_floor, k + 1), p.gamma) *
                   std::exp(om * integral);
    }
    return d;
}

std::pair<std::vector<double>, std::vector<double>> malliavin_d_logprice(
    const PathSet& path, const ModelParams& p, const TimeGrid& grid, const NoiseGrid& noise,
    std::size_t u_index, double eps_num) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();
    const double om = 1.0 - p.gamma;
    const double nu_floor = std::pow(eps_num, 1.0 / om);

    std::vector<double> d_x(n + 1, 0.0);
    std::vector<double> d_hat_x(n + 1, 0.0);
    if (u_index > n) return {std::move(d_x), std::move(d_hat_x)};

    const std::vector<double> d_nu = malliavin_d_nu(path.nu, p, grid, u_index, eps_num);
    const double sqrt_nu_u = std::sqrt(floored(path.nu[u_index], nu_floor, u_index));
    const double hat_value = std::sqrt(1.0 - p.rho * p.rho) * sqrt_nu_u;

    double dt_integral = 0.0;
    double ito_integral = 0.0;
    d_x[u_index] = p.rho * sqrt_nu_u;
    d_hat_x[u_index] = hat_value;
    for (std::size_t k = u_index; k < n; ++k) {
        const double nu_k = floored(path.nu[k], nu_floor, k);
        dt_integral += d_nu[k] * dt;
        ito_integral += d_nu[k] / std::sqrt(nu_k) * noise.dB[k];
        d_x[k + 1] = -0.5 * dt_integral + p.rho * sqrt_nu_u + 0.5 * ito_integral;
        d_hat_x[k + 1] = hat_value;
    }
    return {std::move(d_x), std::move(d_hat_x)};
}

std::pair<std::vector<double>, std::vector<double>> malliavin_d_price(
    const PathSet& path, const ModelParams& p, const TimeGrid& grid, const NoiseGrid& noise,
    std::size_t t_prime_index, double eps_num) {
    auto [d_x, d_hat_x] = malliavin_d_logprice(path, p, grid, noise, t_prime_index, eps_num);
    std::vector<double> d_s(d_x.size(), 0.0);
    std::vector<double> d_hat_s(d_x.size(), 0.0);
    for (std::size_t k = t_prime_index; k < d_x.size(); ++k) {
        d_s[k] = path.S[k] * d_x[k];
        d_hat_s[k] = path.S[k] * d_hat_x[k];
    }
    return {std::move(d_s), std::move(d_hat_s)};
}

DerivativePath evaluate_derivative_path(const PathSet& path, const ModelParams& p,
                                        const TimeGrid& grid, const NoiseGrid& noise,
                                        std::size_t r_index, double eps_num) {
    DerivativePath out;
    out.r_index = r_index;
    out.d_sigma = malliavin_d_sigma(path.sigma, p, grid, r_index, eps_num);
    out.d_nu = malliavin_d_nu(path.nu, p, grid, r_index, eps_num);
    auto [d_x, d_hat_x] = malliavin_d_logprice(path, p, grid, noise, r_index, eps_num);
    out.d_X = std::move(d_x);
    out.d_hat_X = std::move(d_hat_x);
    auto [d_s, d_hat_s] = malliavin_d_price(path, p, grid, noise, r_index, eps_num);
    out.d_S = std::move(d_s);
    out.d_hat_S = std::move(d_hat_s);
    return out;
}

std::vector<double> malliavin_d_sigma_terminal(const std::vector<double>& sigma,
                                               const ModelParams& p, const TimeGrid& grid,
                                               double eps_num) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();
    const double om = 1.0 - p.gamma;

    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        prefix[j + 1] = prefix[j] + sigma_integrand(p, floored(sigma[j], eps_num, j)) * dt;

    std::vector<double> d(n + 1);
    for (std::size_t r = 0; r <= n; ++r)
        d[r] = om * p.theta * std::exp(om * (prefix[n] - prefix[r]));
    return d;
}

std::vector<double> malliavin_d_nu_terminal(const std::vector<double>& nu, const ModelParams& p,
                                            const TimeGrid& grid, double eps_num) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();
    const double om = 1.0 - p.gamma;
    const double nu_floor = std::pow(eps_num, 1.0 / om);

    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        prefix[j + 1] = prefix[j] + nu_integrand(p, floored(nu[j], nu_floor, j)) * dt;

    const double terminal = p.theta * std::pow(floored(nu[n], nu_floor, n), p.gamma);
    std::vector<double> d(n + 1);
    for (std::size_t r = 0; r <= n; ++r) d[r] = terminal * std::exp(om * (prefix[n] - prefix[r]));
    return d;
}

std::string derivative_path_csv(const DerivativePath& d, const TimeGrid& grid) {
    CsvBuilder csv("k,t,d_sigma,d_nu,d_X,d_hat_X,d_S,d_hat_S");
    for (std::size_t k = 0; k < d.d_sigma.size(); ++k) {
        csv.field(static_cast<std::uint64_t>(k))
            .field(grid.t(k))
            .field(d.d_sigma[k])
            .field(d.d_nu[k])
            .field(d.d_X[k])
            .field(d.d_hat_X[k])
            .field(d.d_S[k])
            .field(d.d_hat_S[k])
            .end_row();
    }
    return csv.str();
}

} // namespace cevmc
