#include "cevmc/bump.hpp"

#include "cevmc/errors.hpp"
#include "cevmc/path.hpp"

#include <cmath>

namespace cevmc {

namespace {

double terminal_quantity(const ModelParams& p, const TimeGrid& grid, const NoiseGrid& noise,
                         BumpQuantity quantity, double eps_num) {
    const std::vector<double> sigma = simulate_sigma_path(p, grid, noise, eps_num);
    if (quantity == BumpQuantity::sigma_T) return sigma.back();
    const std::vector<double> nu = nu_from_sigma(sigma, p.gamma, eps_num);
    if (quantity == BumpQuantity::nu_T) return nu.back();
    auto [x, s] = simulate_asset_path(p, grid, noise, nu, /*with_price_path=*/false);
    if (quantity == BumpQuantity::X_T) return x.back();
    return std::exp(x.back());
}

} // namespace

double bump_directional_derivative(const ModelParams& p, const TimeGrid& grid,
                                   const NoiseGrid& base, WhichBrownian which,
                                   std::size_t r_index, double delta_bump, BumpQuantity quantity,
                                   double eps_num) {
    if (!(delta_bump > 0.0)) throw ParamOutOfRange("delta_bump", "(0, inf)");
    if (eps_num <= 0.0) eps_num = default_eps_num(p);
    const double shift = delta_bump * grid.dt();

    // Each side is rebuilt from the pristine base so the two shifts stay
    // exactly symmetric.
    NoiseGrid bumped = base;
    auto* stream = which == WhichBrownian::W ? &bumped.dW : &bumped.dW_hat;
    const auto* base_stream = which == WhichBrownian::W ? &base.dW : &base.dW_hat;

    for (std::size_t k = r_index; k < grid.n_steps; ++k) (*stream)[k] = (*base_stream)[k] + shift;
    assemble_db(p.rho, bumped);
    const double up = terminal_quantity(p, grid, bumped, quantity, eps_num);

    for (std::size_t k = r_index; k < grid.n_steps; ++k) (*stream)[k] = (*base_stream)[k] - shift;
    assemble_db(p.rho, bumped);
    const double dn = terminal_quantity(p, grid, bumped, quantity, eps_num);

    return (up - dn) / (2.0 * delta_bump);
}

double bump_directional_derivative(const ModelParams& p, const TimeGrid& grid, SeedSpec seed,
                                   WhichBrownian which, std::size_t r_index, double delta_bump,
                                   BumpQuantity quantity, double eps_num) {
    const NoiseGrid base = generate_noise(seed, grid, p.rho);
    return bump_directional_derivative(p, grid, base, which, r_index, delta_bump, quantity,
                                       eps_num);
}

} // namespace cevmc
