#pragma once

#include "cevmc/grid.hpp"
#include "cevmc/noise.hpp"
#include "cevmc/params.hpp"

#include <cstddef>

namespace cevmc {

enum class BumpQuantity { sigma_T, nu_T, X_T, S_T };
enum class WhichBrownian { W, W_hat };

// Cameron-Martin directional derivative of the discretized flow: every
// increment of the chosen Brownian from r_index onward is shifted by
// +-delta_bump * dt, the path is re-simulated on the otherwise identical
// noise, and the central difference of the terminal quantity is returned.
// This approximates int_{t_r}^T D_s(quantity) ds and deliberately shares no
// code with the closed-form derivative evaluators beyond the simulator.
double bump_directional_derivative(const ModelParams& p, const TimeGrid& grid,
                                   const NoiseGrid& base, WhichBrownian which,
                                   std::size_t r_index, double delta_bump, BumpQuantity quantity,
                                   double eps_num = 0.0);

double bump_directional_derivative(const ModelParams& p, const TimeGrid& grid, SeedSpec seed,
                                   WhichBrownian which, std::size_t r_index, double delta_bump,
                                   BumpQuantity quantity, double eps_num = 0.0);

} // namespace cevmc
