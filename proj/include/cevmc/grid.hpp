#pragma once

#include "cevmc/errors.hpp"

#include <cstddef>

namespace cevmc {

// Uniform discretization of [0, T] into n_steps intervals.
struct TimeGrid {
    double T = 1.0;
    std::size_t n_steps = 1;

    TimeGrid() = default;
    TimeGrid(double horizon, std::size_t steps) : T(horizon), n_steps(steps) {
        if (!(T > 0.0)) throw ParamOutOfRange("T", "(0, inf)");
        if (n_steps < 1) throw ParamOutOfRange("n_steps", ">= 1");
    }

    double dt() const { return T / static_cast<double>(n_steps); }
    double t(std::size_t k) const { return static_cast<double>(k) * dt(); }
};

} // namespace cevmc
