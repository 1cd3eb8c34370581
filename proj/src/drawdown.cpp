#include "dcds/drawdown.hpp"

#include <stdexcept>
#include <utility>

namespace dcds {

DrawdownProblem::DrawdownProblem(ScaleEvaluator eval_, double b_, double y_)
    : eval(std::move(eval_)), b(b_), y(y_) {
    if (!(b > 0.0)) throw std::domain_error("DrawdownProblem: b must be > 0");
    if (!(y >= 0.0 && y <= b)) throw std::domain_error("DrawdownProblem: y must lie in [0, b]");
}

double exit_up_transform(const DrawdownProblem& prob) {
    const ScaleEvaluator& e = prob.eval;
    const double q = e.u();
    return e.Z(prob.b - prob.y) - q * (e.W(prob.b) / e.W_prime(prob.b)) * e.W(prob.b - prob.y);
}

double discounted_max_increase(const DrawdownProblem& prob) {
    const ScaleEvaluator& e = prob.eval;
    return e.W(prob.b - prob.y) / e.W_prime(prob.b);
}

namespace {
void check_barrier(const DrawdownProblem& prob, double h) {
    if (!(h > 0.0 && h <= prob.b)) {
        throw std::domain_error("two-sided exit: h must lie in (0, b]");
    }
    if (!(prob.y >= h)) {
        throw std::domain_error("two-sided exit: y must lie in [h, b]");
    }
}
}  // namespace

double two_sided_down(const DrawdownProblem& prob, double h) {
    check_barrier(prob, h);
    const ScaleEvaluator& e = prob.eval;
    return e.W(prob.b - prob.y) / e.W(prob.b - h);
}

double two_sided_up(const DrawdownProblem& prob, double h) {
    check_barrier(prob, h);
    const ScaleEvaluator& e = prob.eval;
    const double wbh = e.W(prob.b - h);
    return e.Z(prob.b - prob.y) - (e.Z(prob.b - h) / wbh) * e.W(prob.b - prob.y);
}

double classic_two_sided_exit(const JumpDiffusionModel& model, double u, double x, double b) {
    if (!(b > 0.0)) throw std::domain_error("classic_two_sided_exit: b must be > 0");
    if (!(x >= 0.0 && x <= b)) {
        throw std::domain_error("classic_two_sided_exit: x must lie in [0, b]");
    }
    ScaleEvaluator eval(model, u);
    return eval.W(x) / eval.W(b);
}

}  // namespace dcds
