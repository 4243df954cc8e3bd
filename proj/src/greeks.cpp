#include "cevmc/greeks.hpp"

#include "cevmc/errors.hpp"
#include "cevmc/noise.hpp"
#include "cevmc/parallel.hpp"
#include "cevmc/path.hpp"
#include "cevmc/stats.hpp"

#include <chrono>
#include <cmath>
#include <vector>

namespace cevmc {

std::string to_string(PayoffKind k) {
    switch (k) {
    case PayoffKind::call: return "call";
    case PayoffKind::put: return "put";
    case PayoffKind::digital_call: return "digital-call";
    case PayoffKind::constant: return "constant";
    }
    return "?";
}

std::string to_string(GreekKind k) {
    switch (k) {
    case GreekKind::price: return "price";
    case GreekKind::delta: return "delta";
    case GreekKind::rho: return "rho";
    }
    return "?";
}

std::string to_string(Method m) {
    switch (m) {
    case Method::malliavin: return "malliavin";
    case Method::fd_central: return "fd-central";
    case Method::analytic_oracle: return "analytic-oracle";
    }
    return "?";
}

PayoffKind payoff_kind_from_string(const std::string& s) {
    if (s == "call") return PayoffKind::call;
    if (s == "put") return PayoffKind::put;
    if (s == "digital-call") return PayoffKind::digital_call;
    if (s == "constant") return PayoffKind::constant;
    throw ConfigParse("unknown payoff kind '" + s + "'");
}

Method method_from_string(const std::string& s) {
    if (s == "malliavin") return Method::malliavin;
    if (s == "fd-central") return Method::fd_central;
    if (s == "analytic-oracle") return Method::analytic_oracle;
    throw ConfigParse("unknown method '" + s + "'");
}

namespace {

struct PathBuffers {
    NoiseGrid noise;
    std::vector<double> sigma;
    std::vector<double> nu;
};

// Maps an estimator path index onto its random stream; under antithetic
// pairing consecutive indices share a stream with opposite signs.
void make_noise(std::uint64_t master_seed, std::uint64_t path_index, const TimeGrid& grid,
                double rho, bool antithetic, NoiseGrid& out) {
    const std::uint64_t stream = antithetic ? path_index / 2 : path_index;
    const bool negate = antithetic && (path_index % 2 == 1);
    generate_noise_into(SeedSpec{master_seed, stream}, grid, rho, out, negate);
}

void simulate_vol(const ModelParams& p, const TimeGrid& grid, double eps_num, PathBuffers& b) {
    b.sigma = simulate_sigma_path(p, grid, b.noise, eps_num);
    std::size_t clamps = 0;
    b.nu = nu_from_sigma(b.sigma, p.gamma, eps_num, &clamps);
}

// Terminal log-price for given initial price and rate, reusing the variance
// path (which depends on neither).
double terminal_log_price(const ModelParams& p, const TimeGrid& grid, const PathBuffers& b,
                          double x0, double r) {
    const double dt = grid.dt();
    double x = std::log(x0);
    for (std::size_t k = 0; k < grid.n_steps; ++k)
        x += (r - 0.5 * b.nu[k]) * dt + std::sqrt(b.nu[k]) * b.noise.dB[k];
    return x;
}

// Left-point Ito sum of nu^(-1/2) against dW_hat over the full grid.
double weight_ito_sum(const TimeGrid& grid, const PathBuffers& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < grid.n_steps; ++k)
        acc += b.noise.dW_hat[k] / std::sqrt(b.nu[k]);
    return acc;
}

// Runs `contribution(path_index, buffers)` over all paths with deterministic
// block reduction and fills the estimate/std_error/wall_ms fields.
template <class Contribution>
GreekEstimate estimate_paths(GreekKind greek, Method method, const ModelParams& p,
                             std::uint64_t n_paths, const TimeGrid& grid,
                             std::uint64_t master_seed, const EstimatorOptions& opts,
                             Contribution&& contribution) {
    validate_params(p);
    const auto t0 = std::chrono::steady_clock::now();
    const double eps_num = opts.eps_num > 0.0 ? opts.eps_num : default_eps_num(p);
    if (!(eps_num < epsilon_zero(p))) throw ParamOutOfRange("eps_num", "(0, eps0)");

    std::vector<Accumulator> partial(block_count(n_paths));
    run_blocks(n_paths, resolve_threads(opts.threads),
               [&](std::size_t block, std::size_t begin, std::size_t end) {
                   PathBuffers buffers;
                   Accumulator acc;
                   for (std::size_t i = begin; i < end; ++i) {
                       make_noise(master_seed, i, grid, p.rho, opts.antithetic, buffers.noise);
                       simulate_vol(p, grid, eps_num, buffers);
                       acc.add(contribution(buffers));
                   }
                   partial[block] = acc;
               });

    Accumulator total;
    for (const Accumulator& a : partial) total.merge(a);

    GreekEstimate out;
    out.greek = greek;
    out.method = method;
    out.estimate = total.mean;
    out.std_error = total.std_error();
    out.n_paths = n_paths;
    out.n_steps = grid.n_steps;
    out.master_seed = master_seed;
    out.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return out;
}

} // namespace

GreekEstimate price(const ModelParams& p, const Payoff& payoff, std::uint64_t n_paths,
                    const TimeGrid& grid, std::uint64_t master_seed,
                    const EstimatorOptions& opts) {
    const double disc = std::exp(-p.r * grid.T);
    return estimate_paths(GreekKind::price, Method::malliavin, p, n_paths, grid, master_seed,
                          opts, [&](const PathBuffers& b) {
                              const double s_t =
                                  std::exp(terminal_log_price(p, grid, b, p.x, p.r));
                              return disc * payoff(s_t);
                          });
}

GreekEstimate delta_malliavin(const ModelParams& p, const Payoff& payoff, std::uint64_t n_paths,
                              const TimeGrid& grid, std::uint64_t master_seed,
                              const EstimatorOptions& opts) {
    const double disc = std::exp(-p.r * grid.T);
    const double scale = 1.0 / (p.x * grid.T * std::sqrt(1.0 - p.rho * p.rho));
    return estimate_paths(GreekKind::delta, Method::malliavin, p, n_paths, grid, master_seed,
                          opts, [&](const PathBuffers& b) {
                              const double s_t =
                                  std::exp(terminal_log_price(p, grid, b, p.x, p.r));
                              return disc * payoff(s_t) * scale * weight_ito_sum(grid, b);
                          });
}

GreekEstimate rho_malliavin(const ModelParams& p, const Payoff& payoff, std::uint64_t n_paths,
                            const TimeGrid& grid, std::uint64_t master_seed,
                            const EstimatorOptions& opts) {
    const double disc = std::exp(-p.r * grid.T);
    const double scale = 1.0 / std::sqrt(1.0 - p.rho * p.rho);
    return estimate_paths(GreekKind::rho, Method::malliavin, p, n_paths, grid, master_seed, opts,
                          [&](const PathBuffers& b) {
                              const double s_t =
                                  std::exp(terminal_log_price(p, grid, b, p.x, p.r));
                              return disc * payoff(s_t) *
                                     (scale * weight_ito_sum(grid, b) - grid.T);
                          });
}

GreekEstimate delta_fd(const ModelParams& p, const Payoff& payoff, std::uint64_t n_paths,
                       const TimeGrid& grid, std::uint64_t master_seed, double bump_h,
                       const EstimatorOptions& opts) {
    if (!(bump_h > 0.0) || !(bump_h < p.x)) throw ParamOutOfRange("bump_h", "(0, x)");
    const double disc = std::exp(-p.r * grid.T);
    GreekEstimate out = estimate_paths(
        GreekKind::delta, Method::fd_central, p, n_paths, grid, master_seed, opts,
        [&](const PathBuffers& b) {
            const double up = payoff(std::exp(terminal_log_price(p, grid, b, p.x + bump_h, p.r)));
            const double dn = payoff(std::exp(terminal_log_price(p, grid, b, p.x - bump_h, p.r)));
            return disc * (up - dn) / (2.0 * bump_h);
        });
    return out;
}

GreekEstimate rho_fd(const ModelParams& p, const Payoff& payoff, std::uint64_t n_paths,
                     const TimeGrid& grid, std::uint64_t master_seed, double bump_h,
                     const EstimatorOptions& opts) {
    if (!(bump_h > 0.0)) throw ParamOutOfRange("bump_h", "(0, inf)");
    const double disc_up = std::exp(-(p.r + bump_h) * grid.T);
    const double disc_dn = std::exp(-(p.r - bump_h) * grid.T);
    return estimate_paths(
        GreekKind::rho, Method::fd_central, p, n_paths, grid, master_seed, opts,
        [&](const PathBuffers& b) {
            const double up = payoff(std::exp(terminal_log_price(p, grid, b, p.x, p.r + bump_h)));
            const double dn = payoff(std::exp(terminal_log_price(p, grid, b, p.x, p.r - bump_h)));
            return (disc_up * up - disc_dn * dn) / (2.0 * bump_h);
        });
}

double weight_integrand_moment(const ModelParams& p, const TimeGrid& grid, std::uint64_t n_paths,
                               std::uint64_t master_seed, double moment_exponent,
                               const EstimatorOptions& opts) {
    const double q = 0.5 * moment_exponent;
    const GreekEstimate est = estimate_paths(
        GreekKind::price, Method::malliavin, p, n_paths, grid, master_seed, opts,
        [&](const PathBuffers& b) {
            double acc = 0.0;
            for (std::size_t k = 0; k < grid.n_steps; ++k) acc += std::pow(b.nu[k], -q);
            return acc / static_cast<double>(grid.n_steps);
        });
    return est.estimate;
}

} // namespace cevmc
