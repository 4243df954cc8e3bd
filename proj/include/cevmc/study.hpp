#pragma once

#include "cevmc/grid.hpp"
#include "cevmc/params.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cevmc {

// One threshold level of the approximation study. l2_error estimates
// E[(sigma^eps_T - sigma_T)^2] under shared noise; the violation figures
// measure how far the discrete scheme strays from the continuous ordering
// u <= sigma^eps <= sigma (zero when the ordering holds at every step).
struct ApproxStudyRow {
    double eps = 0.0;
    double l2_error = 0.0;
    double l2_error_se = 0.0;
    double max_order_violation = 0.0;  // sup over paths and steps
    double mean_order_violation = 0.0; // mean over paths of the per-path sup
};

struct ApproxStudyResult {
    std::vector<ApproxStudyRow> rows; // one per eps, in input order
    // Shared-noise statistics of v(eps_i) - v(eps_{i+1}) per path, where
    // v = (sigma^eps_T - sigma_T)^2; used to test monotonicity sharply.
    std::vector<double> adjacent_diff_mean;
    std::vector<double> adjacent_diff_se;
    double min_sigma = 0.0; // smallest production sigma seen across all paths
    std::uint64_t n_paths = 0;
    std::uint64_t n_steps = 0;
};

ApproxStudyResult approx_study(const ModelParams& p, const TimeGrid& grid, std::uint64_t n_paths,
                               std::uint64_t master_seed, const std::vector<double>& eps_list,
                               int threads = 1, double eps_num = 0.0);

// One comparison row of the closed-form side against the bump oracle.
// riemann_value is the left-endpoint sum of the closed-form derivative over
// differentiation times in [t_r, T]; bump_value the central-difference
// directional derivative; rel_error their relative gap, reported as absolute
// whenever the Riemann value is exactly zero.
struct DerivCheckRow {
    std::string quantity; // sigma | nu | X | S
    std::string brownian; // W | What
    std::size_t r_index = 0;
    double riemann_value = 0.0;
    double bump_value = 0.0;
    double rel_error = 0.0;
};

struct DerivPair {
    std::string quantity;
    std::string brownian;
};

// Runs n_r evenly spread differentiation indices on each of n_paths
// independent paths for every requested (quantity, brownian) pair.
// Supported pairs: sigma:W, nu:W, nu:What, X:What, S:What, X:W, S:W.
std::vector<DerivCheckRow> derivative_check(const ModelParams& p, const TimeGrid& grid,
                                            std::uint64_t master_seed,
                                            const std::vector<DerivPair>& pairs, std::size_t n_r,
                                            std::uint64_t n_paths, double delta_bump,
                                            int threads = 1, double eps_num = 0.0);

} // namespace cevmc
