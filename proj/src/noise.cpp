#include "cevmc/noise.hpp"

#include <cmath>

namespace cevmc {

void generate_noise_into(SeedSpec seed, const TimeGrid& grid, double rho, NoiseGrid& out,
                         bool negate) {
    const std::size_t n = grid.n_steps;
    out.dW.resize(n);
    out.dW_hat.resize(n);
    out.dB.resize(n);

    PathRng rng(seed);
    const double sqrt_dt = std::sqrt(grid.dt());
    const double sign = negate ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        out.dW[k] = sign * rng.next_gaussian() * sqrt_dt;
        out.dW_hat[k] = sign * rng.next_gaussian() * sqrt_dt;
    }
    const double comp = std::sqrt(1.0 - rho * rho);
    for (std::size_t k = 0; k < n; ++k) out.dB[k] = rho * out.dW[k] + comp * out.dW_hat[k];
}

NoiseGrid generate_noise(SeedSpec seed, const TimeGrid& grid, double rho, bool negate) {
    NoiseGrid out;
    generate_noise_into(seed, grid, rho, out, negate);
    return out;
}

void assemble_db(double rho, NoiseGrid& noise) {
    const double comp = std::sqrt(1.0 - rho * rho);
    noise.dB.resize(noise.dW.size());
    for (std::size_t k = 0; k < noise.dW.size(); ++k)
        noise.dB[k] = rho * noise.dW[k] + comp * noise.dW_hat[k];
}

} // namespace cevmc
