#include "cevmc/study.hpp"

#include "cevmc/bump.hpp"
#include "cevmc/errors.hpp"
#include "cevmc/malliavin.hpp"
#include "cevmc/noise.hpp"
#include "cevmc/parallel.hpp"
#include "cevmc/path.hpp"
#include "cevmc/stats.hpp"

#include <algorithm>
#include <cmath>

namespace cevmc {

namespace {

constexpr std::size_t kStudyBlock = 64;
constexpr std::size_t kDerivBlock = 1;

double path_max_violation(const std::vector<double>& u, const std::vector<double>& sigma_eps,
                          const std::vector<double>& sigma) {
    double worst = 0.0;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        worst = std::max(worst, u[k] - sigma_eps[k]);
        worst = std::max(worst, sigma_eps[k] - sigma[k]);
    }
    return std::max(worst, 0.0);
}

} // namespace

ApproxStudyResult approx_study(const ModelParams& p, const TimeGrid& grid, std::uint64_t n_paths,
                               std::uint64_t master_seed, const std::vector<double>& eps_list,
                               int threads, double eps_num) {
    validate_params(p);
    if (eps_list.empty()) throw ConfigParse("eps study list is empty");
    for (double e : eps_list)
        if (!(e > 0.0)) throw ParamOutOfRange("eps_study", "(0, inf)");
    if (eps_num <= 0.0) eps_num = default_eps_num(p);

    const std::size_t n_eps = eps_list.size();

    struct BlockResult {
        std::vector<Accumulator> sq_err;
        std::vector<Accumulator> viol_mean;
        std::vector<double> viol_max;
        std::vector<Accumulator> adj_diff;
        double min_sigma = 1e300;
    };
    std::vector<BlockResult> partial(block_count(n_paths, kStudyBlock));

    run_blocks(n_paths, kStudyBlock, resolve_threads(threads),
               [&](std::size_t block, std::size_t begin, std::size_t end) {
                   BlockResult res;
                   res.sq_err.resize(n_eps);
                   res.viol_mean.resize(n_eps);
                   res.viol_max.assign(n_eps, 0.0);
                   res.adj_diff.resize(n_eps > 1 ? n_eps - 1 : 0);

                   std::vector<double> sq(n_eps);
                   for (std::size_t i = begin; i < end; ++i) {
                       const NoiseGrid noise =
                           generate_noise(SeedSpec{master_seed, i}, grid, p.rho);
                       const std::vector<double> sigma =
                           simulate_sigma_path(p, grid, noise, eps_num);
                       for (double s : sigma) res.min_sigma = std::min(res.min_sigma, s);
                       const std::vector<double> u = simulate_ou_bound(p, grid, noise);
                       for (std::size_t e = 0; e < n_eps; ++e) {
                           const std::vector<double> sigma_eps =
                               simulate_sigma_path(p, grid, noise, eps_list[e]);
                           const double diff = sigma_eps.back() - sigma.back();
                           sq[e] = diff * diff;
                           res.sq_err[e].add(sq[e]);
                           const double viol = path_max_violation(u, sigma_eps, sigma);
                           res.viol_mean[e].add(viol);
                           res.viol_max[e] = std::max(res.viol_max[e], viol);
                       }
                       for (std::size_t e = 0; e + 1 < n_eps; ++e)
                           res.adj_diff[e].add(sq[e] - sq[e + 1]);
                   }
                   partial[block] = std::move(res);
               });

    ApproxStudyResult out;
    out.n_paths = n_paths;
    out.n_steps = grid.n_steps;
    out.rows.resize(n_eps);
    std::vector<Accumulator> sq_err(n_eps), viol_mean(n_eps), adj(n_eps > 1 ? n_eps - 1 : 0);
    std::vector<double> viol_max(n_eps, 0.0);
    out.min_sigma = 1e300;
    for (const BlockResult& res : partial) {
        if (res.sq_err.empty()) continue;
        out.min_sigma = std::min(out.min_sigma, res.min_sigma);
        for (std::size_t e = 0; e < n_eps; ++e) {
            sq_err[e].merge(res.sq_err[e]);
            viol_mean[e].merge(res.viol_mean[e]);
            viol_max[e] = std::max(viol_max[e], res.viol_max[e]);
        }
        for (std::size_t e = 0; e + 1 < n_eps; ++e) adj[e].merge(res.adj_diff[e]);
    }
    for (std::size_t e = 0; e < n_eps; ++e) {
        out.rows[e].eps = eps_list[e];
        out.rows[e].l2_error = sq_err[e].mean;
        out.rows[e].l2_error_se = sq_err[e].std_error();
        out.rows[e].max_order_violation = viol_max[e];
        out.rows[e].mean_order_violation = viol_mean[e].mean;
    }
    for (std::size_t e = 0; e + 1 < n_eps; ++e) {
        out.adjacent_diff_mean.push_back(adj[e].mean);
        out.adjacent_diff_se.push_back(adj[e].std_error());
    }
    return out;
}

namespace {

// D_u X_T for every u in one backward sweep. With J the prefix sums of the
// nu-integrand, D_u nu_s = D_{u+1} nu_s * exp(om * g_u * dt) for s > u, so
// the two suffix integrals of the log-price derivative obey a one-step
// recursion; this keeps everything in ratios and avoids over/underflow of
// the raw exponentials.
std::vector<double> d_logprice_terminal_all_u(const PathSet& path, const ModelParams& p,
                                              const TimeGrid& grid, const NoiseGrid& noise,
                                              double eps_num) {
    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();
    const double g = p.gamma;
    const double om = 1.0 - g;
    const double nu_floor = std::pow(eps_num, 1.0 / om);

    std::vector<double> d(n + 1, 0.0);
    double a = 0.0; // int_u^T D_u nu_s ds
    double b = 0.0; // int_u^T nu_s^(-1/2) D_u nu_s dB_s
    d[n] = p.rho * std::sqrt(std::max(path.nu[n], nu_floor));
    for (std::size_t u = n; u-- > 0;) {
        const double nu_u = std::max(path.nu[u], nu_floor);
        const double integrand = -p.kappa * p.mu * g / (om * nu_u) +
                                 0.5 * g * p.theta * p.theta * std::pow(nu_u, -2.0 * om) -
                                 p.kappa;
        const double q = std::exp(om * integrand * dt);
        const double d_nu_uu = p.theta * std::pow(nu_u, g); // D_u nu_u
        a = d_nu_uu * dt + q * a;
        b = d_nu_uu / std::sqrt(nu_u) * noise.dB[u] + q * b;
        d[u] = -0.5 * a + p.rho * std::sqrt(nu_u) + 0.5 * b;
    }
    return d;
}

// Left-endpoint sum over differentiation times in [t_r, T] for every r.
std::vector<double> suffix_riemann(const std::vector<double>& values, double dt) {
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t r = values.size() - 1; r-- > 0;) out[r] = out[r + 1] + values[r] * dt;
    return out;
}

} // namespace

std::vector<DerivCheckRow> derivative_check(const ModelParams& p, const TimeGrid& grid,
                                            std::uint64_t master_seed,
                                            const std::vector<DerivPair>& pairs, std::size_t n_r,
                                            std::uint64_t n_paths, double delta_bump, int threads,
                                            double eps_num) {
    validate_params(p);
    if (pairs.empty()) throw ConfigParse("no derivative-check pairs requested");
    for (const DerivPair& pair : pairs) {
        const bool q_ok = pair.quantity == "sigma" || pair.quantity == "nu" ||
                          pair.quantity == "X" || pair.quantity == "S";
        const bool b_ok = pair.brownian == "W" || pair.brownian == "What";
        if (!q_ok) throw ConfigParse("unknown quantity '" + pair.quantity + "'");
        if (!b_ok) throw ConfigParse("unknown brownian '" + pair.brownian + "'");
        if (pair.brownian == "What" && pair.quantity == "sigma")
            throw ConfigParse("pair sigma:What is not supported (the derivative is zero)");
    }
    if (!(delta_bump > 0.0)) throw ParamOutOfRange("delta_bump", "(0, inf)");
    if (n_r < 1) throw ParamOutOfRange("n_r", ">= 1");
    if (eps_num <= 0.0) eps_num = default_eps_num(p);

    const std::size_t n = grid.n_steps;
    const double dt = grid.dt();

    std::vector<std::size_t> r_samples(n_r);
    for (std::size_t j = 0; j < n_r; ++j)
        r_samples[j] = n_r == 1 ? 0 : j * n / (n_r - 1); // includes 0 and n

    std::vector<std::vector<DerivCheckRow>> per_path(n_paths);
    run_blocks(n_paths, kDerivBlock, resolve_threads(threads),
               [&](std::size_t, std::size_t begin, std::size_t end) {
                   for (std::size_t i = begin; i < end; ++i) {
                       const NoiseGrid noise =
                           generate_noise(SeedSpec{master_seed, i}, grid, p.rho);
                       SimOptions opts;
                       opts.eps_num = eps_num;
                       const PathSet path = simulate_path_set(p, grid, noise, opts);

                       std::vector<DerivCheckRow>& rows = per_path[i];
                       for (const DerivPair& pair : pairs) {
                           // Closed-form side, integrated over [t_r, T] for all r.
                           std::vector<double> riemann;
                           if (pair.quantity == "sigma") {
                               riemann = suffix_riemann(
                                   malliavin_d_sigma_terminal(path.sigma, p, grid, eps_num), dt);
                           } else if (pair.quantity == "nu" && pair.brownian == "W") {
                               riemann = suffix_riemann(
                                   malliavin_d_nu_terminal(path.nu, p, grid, eps_num), dt);
                           } else if (pair.quantity == "nu") {
                               riemann.assign(n + 1, 0.0); // Dhat nu = 0
                           } else if (pair.brownian == "What") {
                               // Dhat_u X_T = sqrt(1-rho^2) sqrt(nu_u)
                               std::vector<double> vals(n + 1);
                               const double comp = std::sqrt(1.0 - p.rho * p.rho);
                               for (std::size_t k = 0; k <= n; ++k)
                                   vals[k] = comp * std::sqrt(path.nu[k]);
                               riemann = suffix_riemann(vals, dt);
                               if (pair.quantity == "S")
                                   for (double& v : riemann) v *= path.S[n];
                           } else {
                               riemann = suffix_riemann(
                                   d_logprice_terminal_all_u(path, p, grid, noise, eps_num), dt);
                               if (pair.quantity == "S")
                                   for (double& v : riemann) v *= path.S[n];
                           }

                           const WhichBrownian which =
                               pair.brownian == "W" ? WhichBrownian::W : WhichBrownian::W_hat;
                           BumpQuantity quantity = BumpQuantity::sigma_T;
                           if (pair.quantity == "nu") quantity = BumpQuantity::nu_T;
                           if (pair.quantity == "X") quantity = BumpQuantity::X_T;
                           if (pair.quantity == "S") quantity = BumpQuantity::S_T;

                           for (std::size_t r : r_samples) {
                               DerivCheckRow row;
                               row.quantity = pair.quantity;
                               row.brownian = pair.brownian;
                               row.r_index = r;
                               row.riemann_value = riemann[r];
                               row.bump_value = bump_directional_derivative(
                                   p, grid, noise, which, r, delta_bump, quantity, eps_num);
                               const double gap = std::fabs(row.bump_value - row.riemann_value);
                               row.rel_error = row.riemann_value == 0.0
                                                   ? gap
                                                   : gap / std::fabs(row.riemann_value);
                               rows.push_back(std::move(row));
                           }
                       }
                   }
               });

    std::vector<DerivCheckRow> out;
    for (auto& rows : per_path)
        for (auto& row : rows) out.push_back(std::move(row));
    return out;
}

} // namespace cevmc
