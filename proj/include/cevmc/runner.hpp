#pragma once

#include "cevmc/config.hpp"

#include <string>

namespace cevmc {

// Subcommand bodies behind the CLI. Each builds the complete CSV text in
// memory, then writes it to cfg.output_path in one shot (no partial files),
// and returns the text. Estimator timings and diagnostics go to stderr, never
// into the CSV, so repeated runs with any --threads value produce
// byte-identical files.
std::string run_price(const RunConfig& cfg);
std::string run_greeks(const RunConfig& cfg);
std::string run_approx_study(const RunConfig& cfg);
std::string run_derivative_check(const RunConfig& cfg);
std::string run_dump_path(const RunConfig& cfg);

} // namespace cevmc
