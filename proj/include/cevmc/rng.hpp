#pragma once

#include "cevmc/normal.hpp"

#include <cstdint>

namespace cevmc {

// Identifies one path's random stream. The stream is a pure function of
// (master_seed, path_index); no generator state is ever shared across paths,
// which is what makes any thread schedule produce identical draws.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t path_index = 0;
};

namespace detail {

// SplitMix64 finalizer (Stafford mix13).
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

// Counter-based per-path generator: SplitMix64 advanced by the golden-ratio
// increment from a state derived by double-mixing (master_seed, path_index).
// Gaussians come from the inverse CDF applied to a 53-bit uniform shifted
// into the open interval (0,1), so every draw is finite.
class PathRng {
public:
    PathRng(std::uint64_t master_seed, std::uint64_t path_index) noexcept {
        const std::uint64_t a = detail::mix64(master_seed + 0x9E3779B97F4A7C15ull);
        const std::uint64_t b = detail::mix64(path_index + 0xD1B54A32D192ED03ull);
        state_ = detail::mix64(a ^ (b + 0x8CB92BA72F3D8DD7ull));
    }

    explicit PathRng(SeedSpec spec) noexcept : PathRng(spec.master_seed, spec.path_index) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        return detail::mix64(state_);
    }

    // Uniform on the open interval (0,1), 2^-54 away from both endpoints.
    double next_uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_gaussian() noexcept { return norm_ppf(next_uniform()); }

private:
    std::uint64_t state_;
};

} // namespace cevmc
