#include "cevmc/bs_reference.hpp"

#include "cevmc/errors.hpp"
#include "cevmc/normal.hpp"

#include <cmath>

namespace cevmc {

BsReference bs_limit_reference(const ModelParams& p, double strike) {
    if (!(strike > 0.0)) throw ParamOutOfRange("strike", "(0, inf)");

    BsReference out;
    out.effective_variance =
        p.mu * p.T + (p.nu0 - p.mu) * (1.0 - std::exp(-p.kappa * p.T)) / p.kappa;

    const double s = std::sqrt(out.effective_variance); // total volatility over [0, T]
    const double disc = std::exp(-p.r * p.T);
    const double d1 = (std::log(p.x / strike) + p.r * p.T + 0.5 * out.effective_variance) / s;
    const double d2 = d1 - s;

    out.price = p.x * norm_cdf(d1) - strike * disc * norm_cdf(d2);
    out.delta = norm_cdf(d1);
    out.rho = strike * p.T * disc * norm_cdf(d2);
    return out;
}

} // namespace cevmc
