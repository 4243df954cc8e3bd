#include "cevmc/config.hpp"
#include "cevmc/runner.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> threads;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration file")->required();
    cmd->add_option("--seed", [&args](const CLI::results_t& res) {
            try {
                std::size_t pos = 0;
                args.seed = std::stoull(res[0], &pos);
                return pos == res[0].size();
            } catch (const std::exception&) {
                return false;
            }
        },
        "override run.master_seed");
    cmd->add_option("--out", [&args](const CLI::results_t& res) {
            args.out = res[0];
            return true;
        },
        "override run.output");
    cmd->add_option("--threads", [&args](const CLI::results_t& res) {
            args.threads = res[0];
            return true;
        },
        "worker threads (n or auto); never affects results");
}

cevmc::RunConfig load_with_overrides(const CommonArgs& args) {
    cevmc::RunConfig cfg = cevmc::load_run_config(args.config_path);
    if (args.seed) cfg.master_seed = *args.seed;
    if (args.out) cfg.output_path = *args.out;
    if (args.threads) {
        if (*args.threads == "auto")
            cfg.threads = 0;
        else {
            int n = 0;
            try {
                std::size_t pos = 0;
                n = std::stoi(*args.threads, &pos);
                if (pos != args.threads->size()) n = 0;
            } catch (const std::exception&) {
                n = 0;
            }
            if (n < 1) throw cevmc::ConfigParse("--threads must be >= 1 or auto");
            cfg.threads = n;
        }
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte-Carlo pricing and Malliavin-weight Greeks for the CEV-type Heston model"};
    app.require_subcommand(1);

    CommonArgs price_args, greeks_args, study_args, deriv_args, dump_args;
    CLI::App* price_cmd = app.add_subcommand("price", "Monte-Carlo price of a European payoff");
    add_common(price_cmd, price_args);
    CLI::App* greeks_cmd =
        app.add_subcommand("greeks", "price, Delta and Rho by the requested methods");
    add_common(greeks_cmd, greeks_args);
    CLI::App* study_cmd = app.add_subcommand(
        "approx-study", "L2 distance of the regularized volatility to the production path");
    add_common(study_cmd, study_args);
    CLI::App* deriv_cmd = app.add_subcommand(
        "deriv-check", "closed-form derivative paths against the bump oracle");
    add_common(deriv_cmd, deriv_args);
    CLI::App* dump_cmd = app.add_subcommand("dump-path", "write one simulated trajectory");
    add_common(dump_cmd, dump_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (price_cmd->parsed()) cevmc::run_price(load_with_overrides(price_args));
        if (greeks_cmd->parsed()) cevmc::run_greeks(load_with_overrides(greeks_args));
        if (study_cmd->parsed()) cevmc::run_approx_study(load_with_overrides(study_args));
        if (deriv_cmd->parsed()) cevmc::run_derivative_check(load_with_overrides(deriv_args));
        if (dump_cmd->parsed()) cevmc::run_dump_path(load_with_overrides(dump_args));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
