#include "cevmc/runner.hpp"

#include "cevmc/bs_reference.hpp"
#include "cevmc/csv.hpp"
#include "cevmc/errors.hpp"
#include "cevmc/greeks.hpp"
#include "cevmc/noise.hpp"
#include "cevmc/path.hpp"
#include "cevmc/study.hpp"

#include <iostream>

namespace cevmc {

namespace {

constexpr const char* kGreeksHeader =
    "greek,method,payoff,strike,estimate,std_error,n_paths,n_steps,master_seed,wall_ms";

const Payoff& require_payoff(const RunConfig& cfg) {
    if (!cfg.payoff) throw ConfigParse("missing required key 'payoff.kind'");
    return *cfg.payoff;
}

std::string require_output(const RunConfig& cfg) {
    if (cfg.output_path.empty())
        throw ConfigParse("missing required key 'run.output' (or pass --out)");
    return cfg.output_path;
}

EstimatorOptions estimator_options(const RunConfig& cfg) {
    EstimatorOptions opts;
    opts.threads = cfg.threads;
    opts.antithetic = cfg.antithetic;
    opts.eps_num = cfg.eps_num;
    return opts;
}

// wall_ms is reported on stderr only; the CSV column stays 0 so that file
// bodies are reproducible run to run.
void emit_estimate(CsvBuilder& csv, const RunConfig& cfg, const GreekEstimate& est) {
    const Payoff& payoff = *cfg.payoff;
    csv.field(to_string(est.greek))
        .field(to_string(est.method))
        .field(to_string(payoff.kind))
        .field(payoff.strike)
        .field(est.estimate)
        .field(est.std_error)
        .field(est.n_paths)
        .field(est.n_steps)
        .field(est.master_seed)
        .field(std::int64_t{0})
        .end_row();
    std::cerr << "# " << to_string(est.greek) << "/" << to_string(est.method)
              << " wall_ms=" << est.wall_ms << "\n";
}

GreekEstimate analytic_row(const RunConfig& cfg, GreekKind greek) {
    const Payoff& payoff = *cfg.payoff;
    if (payoff.kind != PayoffKind::call)
        throw ConfigParse("method analytic-oracle supports the call payoff only");
    const BsReference ref = bs_limit_reference(cfg.model, payoff.strike);
    GreekEstimate est;
    est.greek = greek;
    est.method = Method::analytic_oracle;
    est.estimate = greek == GreekKind::price ? ref.price
                   : greek == GreekKind::delta ? ref.delta
                                               : ref.rho;
    est.std_error = 0.0;
    est.n_paths = 0;
    est.n_steps = cfg.n_steps;
    est.master_seed = cfg.master_seed;
    return est;
}

} // namespace

std::string run_price(const RunConfig& cfg) {
    const Payoff& payoff = require_payoff(cfg);
    const std::string out_path = require_output(cfg);
    const TimeGrid grid(cfg.model.T, cfg.n_steps);
    const EstimatorOptions opts = estimator_options(cfg);

    CsvBuilder csv(kGreeksHeader);
    for (Method m : cfg.methods) {
        if (m == Method::analytic_oracle) {
            emit_estimate(csv, cfg, analytic_row(cfg, GreekKind::price));
            continue;
        }
        GreekEstimate est = price(cfg.model, payoff, cfg.n_paths, grid, cfg.master_seed, opts);
        est.method = m;
        emit_estimate(csv, cfg, est);
    }
    write_file(out_path, csv.str());
    return csv.str();
}

std::string run_greeks(const RunConfig& cfg) {
    const Payoff& payoff = require_payoff(cfg);
    const std::string out_path = require_output(cfg);
    const TimeGrid grid(cfg.model.T, cfg.n_steps);
    const EstimatorOptions opts = estimator_options(cfg);

    CsvBuilder csv(kGreeksHeader);
    for (Method m : cfg.methods) {
        switch (m) {
        case Method::malliavin: {
            GreekEstimate p =
                price(cfg.model, payoff, cfg.n_paths, grid, cfg.master_seed, opts);
            emit_estimate(csv, cfg, p);
            emit_estimate(csv, cfg,
                          delta_malliavin(cfg.model, payoff, cfg.n_paths, grid, cfg.master_seed,
                                          opts));
            emit_estimate(csv, cfg,
                          rho_malliavin(cfg.model, payoff, cfg.n_paths, grid, cfg.master_seed,
                                        opts));
            // Integrability hypothesis of the weight, reported as a diagnostic.
            const std::uint64_t diag_paths = cfg.n_paths < 10000 ? cfg.n_paths : 10000;
            std::cerr << "# diagnostic weight_integrand_moment(2.5) = "
                      << format_double(weight_integrand_moment(cfg.model, grid, diag_paths,
                                                               cfg.master_seed, 2.5, opts))
                      << "\n";
            break;
        }
        case Method::fd_central: {
            GreekEstimate p =
                price(cfg.model, payoff, cfg.n_paths, grid, cfg.master_seed, opts);
            p.method = Method::fd_central;
            emit_estimate(csv, cfg, p);
            emit_estimate(csv, cfg,
                          delta_fd(cfg.model, payoff, cfg.n_paths, grid, cfg.master_seed,
                                   cfg.resolved_bump_h_x(), opts));
            emit_estimate(csv, cfg,
                          rho_fd(cfg.model, payoff, cfg.n_paths, grid, cfg.master_seed,
                                 cfg.bump_h_r, opts));
            break;
        }
        case Method::analytic_oracle:
            emit_estimate(csv, cfg, analytic_row(cfg, GreekKind::price));
            emit_estimate(csv, cfg, analytic_row(cfg, GreekKind::delta));
            emit_estimate(csv, cfg, analytic_row(cfg, GreekKind::rho));
            break;
        }
    }
    write_file(out_path, csv.str());
    return csv.str();
}

std::string run_approx_study(const RunConfig& cfg) {
    const std::string out_path = require_output(cfg);
    if (cfg.eps_study.empty())
        throw ConfigParse("missing required key 'run.eps_study' for approx-study");
    const TimeGrid grid(cfg.model.T, cfg.n_steps);

    const ApproxStudyResult result = approx_study(cfg.model, grid, cfg.n_paths, cfg.master_seed,
                                                  cfg.eps_study, cfg.threads, cfg.eps_num);

    CsvBuilder csv("eps,l2_error,max_order_violation,n_paths,n_steps");
    for (const ApproxStudyRow& row : result.rows) {
        csv.field(row.eps)
            .field(row.l2_error)
            .field(row.max_order_violation)
            .field(result.n_paths)
            .field(result.n_steps)
            .end_row();
    }
    write_file(out_path, csv.str());
    return csv.str();
}

std::string run_derivative_check(const RunConfig& cfg) {
    const std::string out_path = require_output(cfg);
    const TimeGrid grid(cfg.model.T, cfg.n_steps);

    const std::vector<DerivCheckRow> rows =
        derivative_check(cfg.model, grid, cfg.master_seed, cfg.deriv_pairs, cfg.deriv_n_r,
                         cfg.deriv_n_paths, cfg.deriv_bump, cfg.threads, cfg.eps_num);

    CsvBuilder csv("quantity,brownian,r_index,riemann_value,bump_value,rel_error");
    for (const DerivCheckRow& row : rows) {
        csv.field(row.quantity)
            .field(row.brownian)
            .field(static_cast<std::uint64_t>(row.r_index))
            .field(row.riemann_value)
            .field(row.bump_value)
            .field(row.rel_error)
            .end_row();
    }
    write_file(out_path, csv.str());
    return csv.str();
}

std::string run_dump_path(const RunConfig& cfg) {
    const std::string out_path = require_output(cfg);
    const TimeGrid grid(cfg.model.T, cfg.n_steps);

    const NoiseGrid noise =
        generate_noise(SeedSpec{cfg.master_seed, cfg.dump_path_index}, grid, cfg.model.rho);
    SimOptions opts;
    opts.eps_num = cfg.eps_num;
    opts.eps_study = cfg.dump_sigma_eps;
    opts.with_ou_bound = cfg.dump_ou;
    const PathSet path = simulate_path_set(cfg.model, grid, noise, opts);

    std::string header = "k,t,sigma,nu,X,S";
    if (!path.sigma_eps.empty()) header += ",sigma_eps";
    if (!path.u.empty()) header += ",u";
    CsvBuilder csv(std::move(header));
    for (std::size_t k = 0; k <= grid.n_steps; ++k) {
        csv.field(static_cast<std::uint64_t>(k))
            .field(grid.t(k))
            .field(path.sigma[k])
            .field(path.nu[k])
            .field(path.X[k])
            .field(path.S[k]);
        if (!path.sigma_eps.empty()) csv.field(path.sigma_eps[k]);
        if (!path.u.empty()) csv.field(path.u[k]);
        csv.end_row();
    }
    std::cerr << "# clamp_count=" << path.clamp_count << "\n";
    write_file(out_path, csv.str());
    return csv.str();
}

} // namespace cevmc
