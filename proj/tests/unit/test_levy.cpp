#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dcds/levy.hpp"
#include "support/oracles.hpp"

using namespace dcds;

namespace {
const JumpDiffusionModel kDrift{0.075, 0.0, 0.5, 9.0};
const JumpDiffusionModel kDiffusion{0.075, 0.2, 0.5, 9.0};
}  // namespace

TEST_CASE("model validation rejects bad parameters") {
    CHECK_THROWS_AS(JumpDiffusionModel(0.075, -0.1, 0.5, 9.0), std::invalid_argument);
    CHECK_THROWS_AS(JumpDiffusionModel(0.075, 0.2, 0.0, 9.0), std::invalid_argument);
    CHECK_THROWS_AS(JumpDiffusionModel(0.075, 0.2, 0.5, -9.0), std::invalid_argument);
    // sigma = 0 requires positive drift (no downward subordinators).
    CHECK_THROWS_AS(JumpDiffusionModel(-0.075, 0.0, 0.5, 9.0), std::invalid_argument);
    CHECK_NOTHROW(JumpDiffusionModel(-0.075, 0.2, 0.5, 9.0));
}

TEST_CASE("laplace exponent point values") {
    CHECK(laplace_exponent(kDrift, 0.0) == 0.0);
    CHECK(laplace_exponent(kDrift, 1.0) == doctest::Approx(0.025).epsilon(1e-14));
    CHECK(laplace_exponent(kDiffusion, 1.0) == doctest::Approx(0.045).epsilon(1e-14));
    CHECK_THROWS_AS(laplace_exponent(kDrift, -9.0), std::domain_error);
}

TEST_CASE("laplace exponent is convex on the positive axis") {
    for (double l1 = 0.0; l1 <= 4.0; l1 += 0.5) {
        for (double l2 = l1 + 0.5; l2 <= 5.0; l2 += 0.5) {
            for (double t : {0.25, 0.5, 0.75}) {
                const double mix = t * l1 + (1.0 - t) * l2;
                const double lhs = laplace_exponent(kDiffusion, mix);
                const double rhs = t * laplace_exponent(kDiffusion, l1) +
                                   (1.0 - t) * laplace_exponent(kDiffusion, l2);
                CHECK(lhs <= rhs + 1e-14);
            }
        }
    }
}

TEST_CASE("psi derivative matches finite differences") {
    CHECK(psi_derivative(kDrift, 0.0) ==
          doctest::Approx(0.075 - 0.5 / 9.0).epsilon(1e-13));
    for (double l : {-2.0, -0.5, 0.0, 0.3, 1.0, 4.0}) {
        for (const auto& m : {kDrift, kDiffusion}) {
            const double fd = test_oracles::central_diff(
                [&](double x) { return laplace_exponent(m, x); }, l);
            CHECK(psi_derivative(m, l) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
    // Monotone growth of psi' for sigma > 0: dominant sigma^2 * lambda term.
    double prev = psi_derivative(kDiffusion, 0.0);
    for (double l = 1.0; l <= 64.0; l *= 2.0) {
        const double cur = psi_derivative(kDiffusion, l);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("root solving: drift-only model") {
    const RootSet rs0 = solve_roots(kDrift, 0.0);
    CHECK(rs0.roots.size() == 2);
    CHECK(rs0.phi == 0.0);  // psi'(0+) > 0, so Phi(0) = 0

    const RootSet rs = solve_roots(kDrift, 0.1);
    REQUIRE(rs.roots.size() == 2);
    // This parameter set factors exactly: psi(lambda) = 0.1 at -4 and 3.
    CHECK(rs.roots[0] == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(rs.roots[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rs.phi == doctest::Approx(3.0));
    for (double root : rs.roots) {
        CHECK(std::abs(laplace_exponent(kDrift, root) - 0.1) <= 1e-12);
    }
}

TEST_CASE("root solving: jump-diffusion model") {
    const RootSet rs = solve_roots(kDiffusion, 0.1);
    REQUIRE(rs.roots.size() == 3);
    CHECK(rs.roots[0] < -9.0);
    CHECK(rs.roots[1] > -9.0);
    CHECK(rs.roots[1] < 0.0);
    CHECK(rs.phi > 0.0);
    for (double root : rs.roots) {
        CHECK(std::abs(laplace_exponent(kDiffusion, root) - 0.1) <= 1e-12);
    }
    // Sign pattern of psi' over the ordered roots: (-, -, +).
    CHECK(psi_derivative(kDiffusion, rs.roots[0]) < 0.0);
    CHECK(psi_derivative(kDiffusion, rs.roots[1]) < 0.0);
    CHECK(psi_derivative(kDiffusion, rs.phi) > 0.0);
}

TEST_CASE("psi(Phi(u)) = u across a grid of rates") {
    for (const auto& m : {kDrift, kDiffusion}) {
        for (double u = 0.0; u <= 1.0; u += 0.05) {
            const RootSet rs = solve_roots(m, u);
            CHECK(std::abs(laplace_exponent(m, rs.phi) - u) <= 1e-10);
            CHECK(rs.roots.size() == (m.sigma == 0.0 ? 2 : 3));
        }
    }
}

TEST_CASE("solve_roots rejects negative rates") {
    CHECK_THROWS_AS(solve_roots(kDrift, -0.1), std::invalid_argument);
}
