#include <doctest.h>

#include <cmath>

#include "dcds/stopping.hpp"
#include "support/oracles.hpp"

using namespace dcds;

namespace {
const JumpDiffusionModel kDrift{0.075, 0.0, 0.5, 9.0};
const JumpDiffusionModel kDiffusion{0.075, 0.2, 0.5, 9.0};
const double kRate = 0.1;
const double kB = 1.6094379124341003;  // ln 5
const SwitchTerms kSwitch{-0.025, -5.0, -1.0};
const CdsTerms kTerms{0.05, 10.0, kB, kRate};
}  // namespace

TEST_CASE("gamma window brackets the reference cost") {
    ScaleEvaluator drift(kDrift, kRate);
    const GammaWindow wd = gamma_window(drift, kSwitch.alpha_tilde, kB);
    // Bounded variation boundary values make the lower end -25/6.
    CHECK(wd.lower == doctest::Approx(-25.0 / 6.0).epsilon(1e-12));
    CHECK(wd.upper == doctest::Approx(-0.010370296625978881).epsilon(1e-9));
    CHECK(wd.contains(-1.0));

    ScaleEvaluator diff(kDiffusion, kRate);
    const GammaWindow wdiff = gamma_window(diff, kSwitch.alpha_tilde, kB);
    // W(0) = 0 for unbounded variation, so the lower end is alpha_tilde itself.
    CHECK(wdiff.lower == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK(wdiff.upper == doctest::Approx(-0.2881795200088533).epsilon(1e-9));
    CHECK(wdiff.contains(-1.0));

    // b -> 0 degenerates the window to a point.
    const GammaWindow tiny = gamma_window(drift, kSwitch.alpha_tilde, 1e-9);
    CHECK(tiny.upper - tiny.lower == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
}

TEST_CASE("window function f_r: zero at 0 and strictly decreasing") {
    for (const auto& m : {kDrift, kDiffusion}) {
        ScaleEvaluator eval(m, kRate);
        CHECK(f_r_of_b(eval, 0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
        double prev = 0.0;
        for (double b = 0.02; b <= 2.0; b += 0.02) {
            const double cur = f_r_of_b(eval, b);
            CHECK(cur < prev);
            prev = cur;
        }
        for (double b = 0.1; b <= 2.0; b += 0.19) {
            CHECK(test_oracles::central_diff([&](double t) { return f_r_of_b(eval, t); }, b) <
                  0.0);
        }
    }
}

TEST_CASE("boundary function: sign change and monotone decrease") {
    for (const auto& m : {kDrift, kDiffusion}) {
        ScaleEvaluator eval(m, kRate);
        CHECK(boundary_f(eval, kSwitch, kB, 0.0) > 0.0);
        CHECK(boundary_f(eval, kSwitch, kB, kB) < 0.0);
        double prev = boundary_f(eval, kSwitch, kB, 0.0);
        for (double h = kB / 200.0; h <= kB; h += kB / 200.0) {
            const double cur = boundary_f(eval, kSwitch, kB, h);
            CHECK(cur < prev);
            prev = cur;
        }
    }
    ScaleEvaluator drift(kDrift, kRate);
    CHECK(boundary_f(drift, kSwitch, kB, 0.0) == doctest::Approx(0.9896297033739643).epsilon(1e-9));
    CHECK(boundary_f(drift, kSwitch, kB, kB) == doctest::Approx(-25.0 / 6.0 + 1.0).epsilon(1e-12));
}

TEST_CASE("free boundary for the reference parameters") {
    ScaleEvaluator drift(kDrift, kRate);
    const BoundarySolution sol0 = solve_h_star(drift, kSwitch, kB);
    CHECK(sol0.h_star == doctest::Approx(1.1476206238362965).epsilon(1e-9));
    CHECK(std::abs(boundary_f(drift, kSwitch, kB, sol0.h_star)) < 1e-11);
    CHECK(sol0.pasting_gap < 1e-10);
    CHECK(sol0.f_at_0 > 0.0);
    CHECK(sol0.f_at_b < 0.0);

    ScaleEvaluator diff(kDiffusion, kRate);
    const BoundarySolution sol2 = solve_h_star(diff, kSwitch, kB);
    CHECK(sol2.h_star == doctest::Approx(0.5590165067542423).epsilon(1e-9));
    CHECK(std::abs(boundary_f(diff, kSwitch, kB, sol2.h_star)) < 1e-11);
    CHECK(sol2.pasting_gap < 1e-10);
}

TEST_CASE("gamma outside the window is rejected") {
    ScaleEvaluator diff(kDiffusion, kRate);
    const GammaWindow wd = gamma_window(diff, kSwitch.alpha_tilde, kB);
    CHECK_THROWS_AS(solve_h_star(diff, SwitchTerms(-0.025, -5.0, wd.lower), kB),
                    WindowViolation);
    CHECK_THROWS_AS(solve_h_star(diff, SwitchTerms(-0.025, -5.0, wd.lower - 0.5), kB),
                    WindowViolation);
    CHECK_THROWS_AS(solve_h_star(diff, SwitchTerms(-0.025, -5.0, wd.upper), kB),
                    WindowViolation);
}

TEST_CASE("candidate strategy value J") {
    for (const auto& m : {kDrift, kDiffusion}) {
        ScaleEvaluator eval(m, kRate);
        const BoundarySolution sol = solve_h_star(eval, kSwitch, kB);
        const double hs = sol.h_star;

        // At y = h the strategy stops immediately and collects the payoff.
        CHECK(candidate_J(eval, kSwitch, kB, hs, hs) ==
              doctest::Approx(payoff_G(eval, kSwitch, kB, hs)).epsilon(1e-12));

        // h* beats nearby thresholds wherever both are admissible.
        for (double eps : {0.05, 0.1, 0.2}) {
            for (double sign : {-1.0, 1.0}) {
                const double h = hs + sign * eps;
                if (h <= 0.0 || h >= kB) continue;
                const double y_lo = std::max(h, hs);
                for (double y = y_lo; y <= kB; y += (kB - y_lo) / 8.0 + 1e-9) {
                    CHECK(candidate_J(eval, kSwitch, kB, hs, y) >=
                          candidate_J(eval, kSwitch, kB, h, y) - 1e-12);
                }
            }
        }

        // Second-order condition: J is locally concave in h at h*.
        const double y_probe = std::min(hs + 0.3, kB);
        const double d2 = test_oracles::central_second_diff(
            [&](double h) { return candidate_J(eval, kSwitch, kB, h, y_probe); }, hs, 1e-4);
        CHECK(d2 < 0.0);
    }
}

TEST_CASE("value function: pasting, majorant, monotonicity") {
    for (const auto& m : {kDrift, kDiffusion}) {
        ScaleEvaluator eval(m, kRate);
        const BoundarySolution sol = solve_h_star(eval, kSwitch, kB);
        const double hs = sol.h_star;

        // Stopping region: the value is the payoff itself.
        for (double y = 0.0; y < hs; y += hs / 7.0) {
            CHECK(value_function(sol, eval, kSwitch, kB, y) ==
                  payoff_G(eval, kSwitch, kB, y));
        }

        // Continuous pasting.
        const double left = value_function(sol, eval, kSwitch, kB, hs - 1e-13);
        const double right = value_function(sol, eval, kSwitch, kB, hs + 1e-13);
        CHECK(std::abs(left - right) < 1e-10);

        // Smooth pasting via the one-sided closed forms.
        const double dleft = payoff_G_prime(eval, kSwitch, kB, hs);
        const double dright = -payoff_G(eval, kSwitch, kB, hs) * eval.W_prime(kB - hs) /
                              eval.W(kB - hs);
        CHECK(std::abs(dleft - dright) < 1e-8);

        // Majorant with equality exactly on [0, h*]; nonnegative and decreasing.
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 200; ++i) {
            const double y = kB * i / 200.0;
            const double v = value_function(sol, eval, kSwitch, kB, y);
            const double g = payoff_G(eval, kSwitch, kB, y);
            CHECK(v >= g - 1e-12);
            if (y <= hs) {
                CHECK(v == doctest::Approx(g).epsilon(1e-12).scale(1.0));
            } else {
                CHECK(v > g);
            }
            CHECK(v >= 0.0);
            CHECK(v <= prev + 1e-12);
            CHECK(value_function_prime(sol, eval, kSwitch, kB, y) <= 1e-12);
            prev = v;
        }
    }
    // sigma > 0 at y = b: W(0) = 0 kills the continuation value.
    ScaleEvaluator diff(kDiffusion, kRate);
    const BoundarySolution sol = solve_h_star(diff, kSwitch, kB);
    CHECK(value_function(sol, diff, kSwitch, kB, kB) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
}

TEST_CASE("smooth pasting values for the reference parameters") {
    ScaleEvaluator drift(kDrift, kRate);
    const BoundarySolution s0 = solve_h_star(drift, kSwitch, kB);
    CHECK(payoff_G(drift, kSwitch, kB, s0.h_star) ==
          doctest::Approx(0.5621114186915772).epsilon(1e-9));
    CHECK(payoff_G_prime(drift, kSwitch, kB, s0.h_star) ==
          doctest::Approx(-1.7520931265294).epsilon(1e-9));

    ScaleEvaluator diff(kDiffusion, kRate);
    const BoundarySolution s2 = solve_h_star(diff, kSwitch, kB);
    CHECK(payoff_G(diff, kSwitch, kB, s2.h_star) ==
          doctest::Approx(0.5106564815062420).epsilon(1e-9));
    CHECK(payoff_G_prime(diff, kSwitch, kB, s2.h_star) ==
          doctest::Approx(-0.8685719642097).epsilon(1e-9));
}

TEST_CASE("total value adds the outright contract and the option") {
    for (const auto& m : {kDrift, kDiffusion}) {
        ScaleEvaluator eval(m, kRate);
        const BoundarySolution sol = solve_h_star(eval, kSwitch, kB);
        for (double y = 0.0; y <= kB; y += kB / 8.0) {
            const double expected = perpetual_cds_value(eval, kTerms, y) +
                                    value_function(sol, eval, kSwitch, kB, y);
            CHECK(total_value(eval, kTerms, kSwitch, y) ==
                  doctest::Approx(expected).epsilon(1e-12).scale(1.0));
        }
    }
}
