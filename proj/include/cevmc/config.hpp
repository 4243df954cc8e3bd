#pragma once

#include "cevmc/greeks.hpp"
#include "cevmc/params.hpp"
#include "cevmc/study.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace cevmc {

// Parsed run configuration. The file format is flat `key = value` text with
// dotted keys ('#' starts a comment); flat keys diff cleanly across study
// sweeps. Unknown keys are rejected.
struct RunConfig {
    ModelParams model;
    std::optional<Payoff> payoff;

    std::uint64_t n_paths = 0;
    std::uint64_t n_steps = 0;
    std::uint64_t master_seed = 0;
    std::vector<Method> methods{Method::malliavin};
    double bump_h_x = 0.0; // <= 0: 1e-2 * model.x
    double bump_h_r = 1e-4;
    std::vector<double> eps_study;      // positive, strictly descending
    std::string output_path;            // may be overridden by --out
    int threads = 0;                    // 0: auto
    bool antithetic = false;
    double eps_num = 0.0;               // <= 0: default safeguard

    std::vector<DerivPair> deriv_pairs{{"sigma", "W"}, {"nu", "W"}, {"X", "What"}};
    std::size_t deriv_n_r = 50;
    std::uint64_t deriv_n_paths = 20;
    double deriv_bump = 1e-5;

    std::uint64_t dump_path_index = 0;
    double dump_sigma_eps = 0.0; // > 0: add the sigma_eps column at this threshold
    bool dump_ou = false;        // add the OU lower-bound column

    double resolved_bump_h_x() const { return bump_h_x > 0.0 ? bump_h_x : 1e-2 * model.x; }
};

// Throws ConfigParse naming the offending key on any missing required key,
// unparseable value or unknown key.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);

} // namespace cevmc
