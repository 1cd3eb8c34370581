#pragma once

#include <functional>
#include <vector>

#include "dcds/cds.hpp"
#include "dcds/stopping.hpp"

namespace dcds {

struct GeneratorConfig {
    double quad_rel_tol = 1e-9;  // relative tolerance of the jump-integral quadrature
    double tail_mass = 1e-14;    // exponential mass ignored beyond the truncation point
    double fd_step = 1e-5;       // stencil width when derivatives are not supplied

    double jump_truncation(double jump_decay) const;  // -ln(tail_mass)/jump_decay
};

// A function on [0, inf) to which the drawdown generator can be applied.
// first/second may be empty, in which case central differences with fd_step
// are used; kinks lists abscissas where value or derivatives are not smooth
// (the jump integral is split there).
struct GeneratorFunction {
    std::function<double(double)> value;
    std::function<double(double)> first;
    std::function<double(double)> second;
    std::vector<double> kinks;
};

// L_Y F(z) = -mu F'(z) + sigma^2/2 F''(z)
//            + jump_rate * int_0^inf (F(z+s) - F(z)) jump_decay e^{-jump_decay s} ds.
// Throws std::runtime_error if the quadrature fails to reach quad_rel_tol and
// std::domain_error if z sits on a kink while derivatives come from finite
// differences.
double apply_generator(const JumpDiffusionModel& model, const GeneratorFunction& fn, double z,
                       const GeneratorConfig& cfg = {});

// (L_Y - r) G(z_i) - r*gamma on a grid interior to (0, b); flat zero when the
// closed forms are consistent with the generator.
std::vector<double> generator_residual_G(const JumpDiffusionModel& model,
                                         const ScaleEvaluator& eval_r, const SwitchTerms& sw,
                                         double b, const std::vector<double>& grid,
                                         const GeneratorConfig& cfg = {});

struct VariationalReport {
    struct Point {
        double y = 0.0;
        double payoff_gap = 0.0;   // G(y) - V(y)
        double generator_V = 0.0;  // (L_Y - r) V(y)
        bool stopping_region = false;
        bool ok = false;
    };
    std::vector<Point> points;
    double max_abs_harmonic = 0.0;  // max |(L_Y - r)V| over the continuation region
    double max_payoff_gap = 0.0;    // max (G - V) over the grid
    bool passed = false;

    std::vector<Point> violations() const;
};

// Checks max{G - V, (L_Y - r)V} = 0 pointwise: on the stopping region V = G
// and (L_Y - r)V <= 0; on the continuation region (L_Y - r)V = 0 and G < V.
VariationalReport variational_check(const JumpDiffusionModel& model,
                                    const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b,
                                    const BoundarySolution& sol, const std::vector<double>& grid,
                                    const GeneratorConfig& cfg = {},
                                    double harmonic_tol = 1e-3, double equality_tol = 1e-10,
                                    double sign_slack = 1e-6);

}  // namespace dcds
