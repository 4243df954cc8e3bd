#pragma once

#include "cevmc/grid.hpp"
#include "cevmc/rng.hpp"

#include <vector>

namespace cevmc {

// Per-path Brownian increments on the grid. dW and dW_hat are independent
// N(0, dt) streams; dB is assembled exactly as
//
//   dB[k] = rho * dW[k] + sqrt(1 - rho^2) * dW_hat[k],
//
// the decomposition of the price-driving motion into the volatility-driving
// one and an independent complement.
struct NoiseGrid {
    std::vector<double> dW;
    std::vector<double> dW_hat;
    std::vector<double> dB;
};

// Draw order is fixed: one (W, W_hat) pair per step, W first, each via the
// inverse CDF. `negate` flips the sign of every increment (antithetic pairing).
NoiseGrid generate_noise(SeedSpec seed, const TimeGrid& grid, double rho, bool negate = false);

// In-place variant reusing the grid's buffers.
void generate_noise_into(SeedSpec seed, const TimeGrid& grid, double rho, NoiseGrid& out,
                         bool negate = false);

// Recomputes dB from dW and dW_hat (after an increment stream was shifted).
void assemble_db(double rho, NoiseGrid& noise);

} // namespace cevmc
