#pragma once

namespace cevmc {

// Standard normal CDF.
//
// Hart-style rational approximation in the body plus a continued fraction in
// the far tail (G. West, "Better approximations to cumulative normal
// functions", Wilmott 2005). Absolute error below 1e-15 everywhere; this is
// the project's fixed reference CDF, independent of libm.
double norm_cdf(double x) noexcept;

// Inverse standard normal CDF (quantile function).
//
// Wichura's algorithm AS 241, PPND16 variant: three rational minimax
// approximations selected on |p - 1/2|, relative error below 1e-15 over
// (0, 1). All Gaussian sampling in the project goes through this function.
// Returns -inf / +inf for p = 0 / p = 1.
double norm_ppf(double p) noexcept;

} // namespace cevmc
