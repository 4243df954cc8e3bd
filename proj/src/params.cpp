#include "cevmc/params.hpp"

#include "cevmc/errors.hpp"

#include <cmath>

namespace cevmc {

double ModelParams::sigma0() const { return std::pow(nu0, 1.0 - gamma); }

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ParamOutOfRange(field, "(0, inf)");
}

} // namespace

ModelParams validate_params(const ModelParams& p) {
    require_positive(p.x, "x");
    require_positive(p.nu0, "nu0");
    require_positive(p.kappa, "kappa");
    require_positive(p.mu, "mu");
    require_positive(p.theta, "theta");
    require_positive(p.T, "T");
    if (!std::isfinite(p.r)) throw ParamOutOfRange("r", "finite");
    if (!(p.gamma > 0.5) || !(p.gamma < 1.0)) throw ParamOutOfRange("gamma", "(1/2, 1)");
    if (!(p.rho > -1.0) || !(p.rho < 1.0)) throw ParamOutOfRange("rho", "(-1, 1)");
    return p;
}

double constant_c(const ModelParams& p) {
    const double g = p.gamma;
    const double base = 2.0 * p.kappa * p.mu / (p.theta * p.theta * (1.0 - g));
    return -std::pow(base, -g / (2.0 * g - 1.0)) * (1.0 - g) / (p.kappa * p.mu * (2.0 * g - 1.0));
}

double constant_xi(const ModelParams& p) {
    const double g = p.gamma;
    const double om = 1.0 - g;
    const double base = p.kappa * p.mu / (p.theta * p.theta * om * om);
    return std::pow(base, -1.0 / (2.0 * g - 1.0)) *
           (p.kappa * p.mu * g * (2.0 * g - 1.0) / (2.0 * om * om));
}

DriftBounds compute_drift_bounds(const ModelParams& p) {
    return DriftBounds{constant_c(p), constant_xi(p)};
}

double epsilon_zero(const ModelParams& p) {
    const double g = p.gamma;
    const double base = 2.0 * p.kappa * p.mu / (p.theta * p.theta * (1.0 - g));
    return std::pow(base, (1.0 - g) / (2.0 * g - 1.0));
}

} // namespace cevmc
