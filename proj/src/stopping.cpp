#include "dcds/stopping.hpp"

#include <cmath>
#include <stdexcept>

#include "dcds/drawdown.hpp"

namespace dcds {

GammaWindow gamma_window(const ScaleEvaluator& eval_r, double alpha_tilde, double b) {
    if (!(alpha_tilde < 0.0)) {
        throw std::invalid_argument("gamma_window: alpha_tilde must be < 0");
    }
    if (!(b > 0.0)) throw std::invalid_argument("gamma_window: b must be > 0");
    const double r = eval_r.u();
    const double w0 = eval_r.W(0.0);
    const double wp0 = eval_r.W_prime(0.0);
    const double wb = eval_r.W(b);
    const double wpb = eval_r.W_prime(b);
    return GammaWindow{alpha_tilde * (1.0 - r * w0 * w0 / wp0),
                       alpha_tilde * (eval_r.Z(b) - r * wb * wb / wpb)};
}

double f_r_of_b(const ScaleEvaluator& eval_r, double b) {
    if (!(b >= 0.0)) throw std::invalid_argument("f_r_of_b: b must be >= 0");
    const double r = eval_r.u();
    const double w0 = eval_r.W(0.0);
    const double wp0 = eval_r.W_prime(0.0);
    const double wb = eval_r.W(b);
    const double wpb = eval_r.W_prime(b);
    return eval_r.Z(b) - r * (wb * wb / wpb - w0 * w0 / wp0) - 1.0;
}

double boundary_f(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b, double h) {
    if (!(h >= 0.0 && h <= b)) throw std::domain_error("boundary_f: h must lie in [0, b]");
    const double r = eval_r.u();
    const double w = eval_r.W(b - h);
    const double wp = eval_r.W_prime(b - h);
    return sw.alpha_tilde * eval_r.Z(b - h) - r * sw.alpha_tilde * w * w / wp - sw.gamma;
}

BoundarySolution solve_h_star(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b) {
    const GammaWindow window = gamma_window(eval_r, sw.alpha_tilde, b);
    if (!window.contains(sw.gamma)) {
        throw WindowViolation("solve_h_star: gamma outside the admissible window");
    }

    const double f0 = boundary_f(eval_r, sw, b, 0.0);
    const double fb = boundary_f(eval_r, sw, b, b);
    if (!(f0 > 0.0 && fb < 0.0)) {
        throw NoBracket("solve_h_star: boundary function does not change sign on [0, b]");
    }

    // f is strictly decreasing, so plain bisection converges to the unique root.
    double lo = 0.0, hi = b;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * b; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = boundary_f(eval_r, sw, b, mid);
        if (fm > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double h_star = 0.5 * (lo + hi);

    const double g = payoff_G(eval_r, sw, b, h_star);
    const double left = payoff_G_prime(eval_r, sw, b, h_star);
    const double right = -g * eval_r.W_prime(b - h_star) / eval_r.W(b - h_star);

    BoundarySolution sol;
    sol.h_star = h_star;
    sol.window = window;
    sol.f_at_0 = f0;
    sol.f_at_b = fb;
    sol.pasting_gap = std::abs(left - right);
    return sol;
}

double candidate_J(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b, double h,
                   double y) {
    if (!(h > 0.0 && h <= b)) throw std::domain_error("candidate_J: h must lie in (0, b]");
    if (!(y >= h && y <= b)) throw std::domain_error("candidate_J: y must lie in [h, b]");
    return payoff_G(eval_r, sw, b, h) * eval_r.W(b - y) / eval_r.W(b - h);
}

double value_function(const BoundarySolution& sol, const ScaleEvaluator& eval_r,
                      const SwitchTerms& sw, double b, double y) {
    if (!(y >= 0.0 && y <= b)) throw std::domain_error("value_function: y must lie in [0, b]");
    if (y <= sol.h_star) return payoff_G(eval_r, sw, b, y);
    return payoff_G(eval_r, sw, b, sol.h_star) * eval_r.W(b - y) / eval_r.W(b - sol.h_star);
}

double value_function_prime(const BoundarySolution& sol, const ScaleEvaluator& eval_r,
                            const SwitchTerms& sw, double b, double y) {
    if (!(y >= 0.0 && y <= b)) {
        throw std::domain_error("value_function_prime: y must lie in [0, b]");
    }
    if (y <= sol.h_star) return payoff_G_prime(eval_r, sw, b, y);
    return -payoff_G(eval_r, sw, b, sol.h_star) * eval_r.W_prime(b - y) /
           eval_r.W(b - sol.h_star);
}

double total_value(const ScaleEvaluator& eval_r, const CdsTerms& terms, const SwitchTerms& sw,
                   double y) {
    const BoundarySolution sol = solve_h_star(eval_r, sw, terms.b);
    return perpetual_cds_value(eval_r, terms, y) +
           value_function(sol, eval_r, sw, terms.b, y);
}

}  // namespace dcds
