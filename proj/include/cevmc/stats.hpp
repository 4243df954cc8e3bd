#pragma once

#include <cmath>
#include <cstdint>

namespace cevmc {

// Welford accumulator with exact merging. Constant inputs keep m2 at exactly
// zero, so degenerate estimators report a std error of 0.0, not rounding
// noise.
struct Accumulator {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const Accumulator& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double d = o.mean - mean;
        const std::uint64_t total = n + o.n;
        mean += d * (static_cast<double>(o.n) / static_cast<double>(total));
        m2 += o.m2 + d * d * (static_cast<double>(n) * static_cast<double>(o.n) /
                              static_cast<double>(total));
        n = total;
    }

    double variance() const {
        if (n < 2) return 0.0;
        const double v = m2 / static_cast<double>(n - 1);
        return v > 0.0 ? v : 0.0;
    }

    double std_error() const {
        return n > 0 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
};

} // namespace cevmc
