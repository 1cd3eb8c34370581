#include <doctest.h>

#include <cmath>
#include <vector>

#include "dcds/verification.hpp"

using namespace dcds;

namespace {
const JumpDiffusionModel kDrift{0.075, 0.0, 0.5, 9.0};
const JumpDiffusionModel kDiffusion{0.075, 0.2, 0.5, 9.0};
const double kRate = 0.1;
const double kB = 1.6094379124341003;  // ln 5
const SwitchTerms kSwitch{-0.025, -5.0, -1.0};

std::vector<double> interior_grid(double b, int n, double margin) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) {
        g.push_back(margin + (b - 2.0 * margin) * i / (n - 1));
    }
    return g;
}
}  // namespace

TEST_CASE("the generator kills constants") {
    GeneratorFunction fn;
    fn.value = [](double) { return 4.25; };
    fn.first = [](double) { return 0.0; };
    fn.second = [](double) { return 0.0; };
    for (const auto& m : {kDrift, kDiffusion}) {
        for (double z : {0.2, 0.9, 1.5}) {
            CHECK(apply_generator(m, fn, z) == doctest::Approx(0.0).scale(1.0).epsilon(1e-11));
        }
    }
}

TEST_CASE("exponential test functions match the closed form") {
    // For F(z) = e^{theta z} with theta < jump_decay, the jump integral is
    // available in closed form and the whole generator collapses to
    // L_Y F(z) = psi(-theta) F(z).
    for (const auto& m : {kDrift, kDiffusion}) {
        for (double theta : {-2.0, -0.5, 0.7, 3.0}) {
            GeneratorFunction fn;
            fn.value = [theta](double z) { return std::exp(theta * z); };
            fn.first = [theta](double z) { return theta * std::exp(theta * z); };
            fn.second = [theta](double z) { return theta * theta * std::exp(theta * z); };
            for (double z : {0.3, 1.0}) {
                // Accuracy is limited by the exponential-tail truncation of the
                // jump integral, not the quadrature itself.
                const double expected = laplace_exponent(m, -theta) * std::exp(theta * z);
                CHECK(apply_generator(m, fn, z) == doctest::Approx(expected).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("finite-difference fallback agrees with analytic derivatives") {
    GeneratorFunction analytic;
    analytic.value = [](double z) { return std::exp(0.8 * z); };
    analytic.first = [](double z) { return 0.8 * std::exp(0.8 * z); };
    analytic.second = [](double z) { return 0.64 * std::exp(0.8 * z); };
    GeneratorFunction fd;
    fd.value = analytic.value;
    const double a = apply_generator(kDiffusion, analytic, 1.0);
    const double b = apply_generator(kDiffusion, fd, 1.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-6));

    fd.kinks = {1.0};
    CHECK_THROWS_AS(apply_generator(kDiffusion, fd, 1.0), std::domain_error);
    CHECK_THROWS_AS(apply_generator(kDiffusion, fd, 1e-6), std::domain_error);
}

TEST_CASE("generator residual of the payoff is flat at r*gamma") {
    for (const auto& m : {kDrift, kDiffusion}) {
        ScaleEvaluator eval(m, kRate);
        const std::vector<double> grid = interior_grid(kB, 101, 0.01);
        const std::vector<double> res = generator_residual_G(m, eval, kSwitch, kB, grid);
        double max_abs = 0.0, sum = 0.0, sum_sq = 0.0;
        for (double v : res) {
            max_abs = std::max(max_abs, std::abs(v));
            sum += v;
            sum_sq += v * v;
        }
        CHECK(max_abs <= 1e-3);
        const double mean = sum / res.size();
        const double stdev = std::sqrt(std::max(0.0, sum_sq / res.size() - mean * mean));
        CHECK(stdev <= 1e-4);
    }
}

TEST_CASE("generator value scales linearly with gamma") {
    ScaleEvaluator eval(kDrift, kRate);
    const std::vector<double> grid{0.4, 0.9, 1.3};
    const SwitchTerms doubled{-0.025, -5.0, -2.0};
    const std::vector<double> res = generator_residual_G(kDrift, eval, doubled, kB, grid);
    // Residuals stay ~0: the flat value tracks r*gamma = -0.2.
    for (double v : res) CHECK(std::abs(v) <= 1e-3);
}

TEST_CASE("variational inequality holds on both regions") {
    for (const auto& m : {kDrift, kDiffusion}) {
        ScaleEvaluator eval(m, kRate);
        const BoundarySolution sol = solve_h_star(eval, kSwitch, kB);
        std::vector<double> grid;
        for (double z : interior_grid(kB, 101, 0.01)) {
            if (std::abs(z - sol.h_star) > 0.01) grid.push_back(z);
        }
        const VariationalReport report =
            variational_check(m, eval, kSwitch, kB, sol, grid);
        INFO("max harmonic defect: ", report.max_abs_harmonic);
        CHECK(report.passed);
        CHECK(report.violations().empty());
        CHECK(report.max_abs_harmonic <= 1e-3);
        CHECK(report.max_payoff_gap <= 1e-10);
        for (const auto& pt : report.points) {
            if (pt.stopping_region) {
                CHECK(pt.generator_V <= 1e-6);
            }
        }
    }
}

TEST_CASE("grid points outside the interior are rejected") {
    ScaleEvaluator eval(kDrift, kRate);
    CHECK_THROWS_AS(generator_residual_G(kDrift, eval, kSwitch, kB, {0.0}), std::domain_error);
    CHECK_THROWS_AS(generator_residual_G(kDrift, eval, kSwitch, kB, {kB}), std::domain_error);
}
