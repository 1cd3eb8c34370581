#pragma once

#include <stdexcept>

#include "dcds/cds.hpp"

namespace dcds {

// gamma must lie strictly inside (lower, upper) for the boundary equation to
// have a root in (0, b).
struct GammaWindow {
    double lower;  // alpha_tilde * (1 - r W(0)^2 / W'(0))
    double upper;  // alpha_tilde * (Z(b) - r W(b)^2 / W'(b))

    bool contains(double gamma) const { return gamma > lower && gamma < upper; }
};

struct BoundarySolution {
    double h_star;       // root of the boundary equation, in (0, b)
    GammaWindow window;  // admissible gamma range
    double f_at_0;       // boundary function at h = 0 (> 0 inside the window)
    double f_at_b;       // boundary function at h = b (< 0 inside the window)
    double pasting_gap;  // |V'(h*-) - V'(h*+)|
};

class WindowViolation : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class NoBracket : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

GammaWindow gamma_window(const ScaleEvaluator& eval_r, double alpha_tilde, double b);

// f_r(b) = Z(b) - r (W(b)^2/W'(b) - W(0)^2/W'(0)) - 1; zero at b = 0 and
// strictly decreasing, which makes the window nonempty.
double f_r_of_b(const ScaleEvaluator& eval_r, double b);

// Boundary equation left-hand side,
//   f(h) = alpha_tilde Z(b-h) - r alpha_tilde W(b-h)^2 / W'(b-h) - gamma,
// strictly decreasing in h on [0, b].
double boundary_f(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b, double h);

// Solves f(h*) = 0 by bisection. Throws WindowViolation when gamma is outside
// the admissible window and NoBracket when f(0) and f(b) do not change sign.
BoundarySolution solve_h_star(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b);

// Value of the threshold strategy "switch when Y first drops below h":
//   J_h(y) = G(h) * W(b-y) / W(b-h),  0 < h <= y <= b.
double candidate_J(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b, double h,
                   double y);

// Optimal-stopping value: G(y) on [0, h*], G(h*) W(b-y)/W(b-h*) on [h*, b].
double value_function(const BoundarySolution& sol, const ScaleEvaluator& eval_r,
                      const SwitchTerms& sw, double b, double y);

// d/dy of the value function (one-sided at 0, b, and h*; the left and right
// derivatives at h* agree by smooth pasting).
double value_function_prime(const BoundarySolution& sol, const ScaleEvaluator& eval_r,
                            const SwitchTerms& sw, double b, double y);

// Full switchable-contract value: outright perpetual CDS plus the switch option.
double total_value(const ScaleEvaluator& eval_r, const CdsTerms& terms, const SwitchTerms& sw,
                   double y);

}  // namespace dcds
