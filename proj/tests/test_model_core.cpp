#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cevmc/errors.hpp"
#include "cevmc/lipschitz.hpp"
#include "cevmc/params.hpp"
#include "cevmc/rng.hpp"

#include <cmath>

using namespace cevmc;

namespace {

ModelParams reference_params() {
    ModelParams p;
    p.x = 100.0;
    p.nu0 = 0.04;
    p.r = 0.02;
    p.kappa = 1.0;
    p.mu = 0.04;
    p.theta = 0.5;
    p.gamma = 0.75;
    p.rho = -0.5;
    p.T = 1.0;
    return p;
}

// Drift part whose extremum the closed forms bound: f(x) = kappa mu x^(-g/(1-g)) - (g theta^2/2)/x.
double f_prime(const ModelParams& p, double x) {
    const double g = p.gamma;
    return -p.kappa * p.mu * g / (1.0 - g) * std::pow(x, -1.0 / (1.0 - g)) +
           0.5 * g * p.theta * p.theta / (x * x);
}

ModelParams random_valid_params(PathRng& rng) {
    ModelParams p;
    p.x = 1.0 + 200.0 * rng.next_uniform();
    p.nu0 = 0.001 + 0.5 * rng.next_uniform();
    p.r = -0.05 + 0.2 * rng.next_uniform();
    p.kappa = 0.1 + 5.0 * rng.next_uniform();
    p.mu = 0.001 + 0.5 * rng.next_uniform();
    p.theta = 0.05 + 2.0 * rng.next_uniform();
    p.gamma = 0.51 + 0.48 * rng.next_uniform();
    p.rho = -0.99 + 1.98 * rng.next_uniform();
    p.T = 0.1 + 3.0 * rng.next_uniform();
    return p;
}

} // namespace

TEST_CASE("validate_params accepts the reference set") {
    const ModelParams p = validate_params(reference_params());
    CHECK(p.gamma == 0.75);
    CHECK(p.rho == -0.5);
}

TEST_CASE("validate_params rejects boundary and out-of-range values") {
    ModelParams p = reference_params();

    p.gamma = 0.5; // the admissible interval is open at 1/2
    CHECK_THROWS_WITH_AS(validate_params(p), doctest::Contains("gamma"), ParamOutOfRange);
    p.gamma = 1.0;
    CHECK_THROWS_AS(validate_params(p), ParamOutOfRange);

    p = reference_params();
    p.rho = 1.0; // the Brownian decomposition needs sqrt(1-rho^2) > 0
    CHECK_THROWS_WITH_AS(validate_params(p), doctest::Contains("rho"), ParamOutOfRange);
    p.rho = -1.0;
    CHECK_THROWS_AS(validate_params(p), ParamOutOfRange);

    for (auto field : {&ModelParams::x, &ModelParams::nu0, &ModelParams::kappa, &ModelParams::mu,
                       &ModelParams::theta, &ModelParams::T}) {
        p = reference_params();
        p.*field = 0.0;
        CHECK_THROWS_AS(validate_params(p), ParamOutOfRange);
        p.*field = -1.0;
        CHECK_THROWS_AS(validate_params(p), ParamOutOfRange);
    }
}

TEST_CASE("constant_c matches the independently computed closed form") {
    // mpmath, 40 digits: -8.63167457503109771
    CHECK(constant_c(reference_params()) ==
          doctest::Approx(-8.63167457503109771).epsilon(1e-14));
}

TEST_CASE("constant_c is negative for any valid params") {
    PathRng rng(11, 0);
    for (int i = 0; i < 2000; ++i) CHECK(constant_c(random_valid_params(rng)) < 0.0);
}

TEST_CASE("constant_c is invariant under (kappa, mu) -> (kappa/c, mu*c)") {
    // Both kappa*mu factors of the closed form keep the product fixed.
    ModelParams p = reference_params();
    const double base = constant_c(p);
    for (double c : {2.0, 5.0, 0.25}) {
        ModelParams q = p;
        q.kappa = p.kappa / c;
        q.mu = p.mu * c;
        CHECK(constant_c(q) == doctest::Approx(base).epsilon(1e-13));
    }
}

TEST_CASE("constant_xi matches the independently computed closed form") {
    // mpmath: exactly 0.018310546875 for these dyadic parameters
    CHECK(constant_xi(reference_params()) ==
          doctest::Approx(0.018310546875).epsilon(1e-14));
    PathRng rng(12, 0);
    for (int i = 0; i < 2000; ++i) CHECK(constant_xi(random_valid_params(rng)) > 0.0);
}

TEST_CASE("xi bounds f' on a fine grid over (0, 10]") {
    const ModelParams p = reference_params();
    const double xi = constant_xi(p);
    double worst = -1e300;
    for (int i = 1; i <= 200000; ++i) {
        const double x = 10.0 * i / 200000.0;
        worst = std::max(worst, f_prime(p, x));
    }
    CHECK(worst <= xi + 1e-12);
    // The bound is attained at an interior point, so it is tight.
    CHECK(worst > xi - 1e-6);
}

TEST_CASE("epsilon_zero is the sign-change threshold of the linear-branch derivative") {
    const ModelParams p = reference_params();
    const double eps0 = epsilon_zero(p);
    CHECK(eps0 == doctest::Approx(1.131370849898476).epsilon(1e-14));

    // Below eps0 the x < eps branch has negative drift-derivative, above positive.
    // That derivative is constant in x and equals f'(eps).
    CHECK(f_prime(p, 0.999 * eps0) < 0.0);
    CHECK(f_prime(p, 1.001 * eps0) > 0.0);

    PathRng rng(13, 0);
    for (int i = 0; i < 500; ++i) {
        const ModelParams q = random_valid_params(rng);
        const double e0 = epsilon_zero(q);
        CHECK(f_prime(q, 0.999 * e0) < 0.0);
        CHECK(f_prime(q, 1.001 * e0) > 0.0);
    }
}

TEST_CASE("drift-derivative bound holds for every eps below eps0") {
    const ModelParams p = reference_params();
    const double xi = constant_xi(p);
    const double eps0 = epsilon_zero(p);
    for (double frac : {0.9, 0.5, 0.1, 0.01}) {
        const LipschitzApprox a{frac * eps0, p.gamma};
        for (int i = -100; i <= 2000; ++i) {
            const double x = 0.01 * i + 0.003;
            const double d =
                p.kappa * p.mu * a.phi_prime(x) - 0.5 * p.gamma * p.theta * p.theta * a.psi_prime(x);
            CHECK(d <= xi * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("constants are pure and bit-identical across calls") {
    const ModelParams p = reference_params();
    const double c1 = constant_c(p), c2 = constant_c(p);
    const double x1 = constant_xi(p), x2 = constant_xi(p);
    const double e1 = epsilon_zero(p), e2 = epsilon_zero(p);
    CHECK(c1 == c2);
    CHECK(x1 == x2);
    CHECK(e1 == e2);
    const DriftBounds b = compute_drift_bounds(p);
    CHECK(b.c == c1);
    CHECK(b.xi == x1);
}
