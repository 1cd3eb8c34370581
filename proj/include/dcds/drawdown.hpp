#pragma once

#include "dcds/scale.hpp"

namespace dcds {

// First-passage functionals of the drawdown process Y = S - X started at
// Y_0 = y, with default barrier b and discounting at the evaluator's rate q.
//
// tau_b_up = first time Y exceeds b, tau_h_down = first time Y drops below h.
struct DrawdownProblem {
    ScaleEvaluator eval;  // built at the discount rate q
    double b;
    double y;

    DrawdownProblem(ScaleEvaluator eval_, double b_, double y_);
};

// E[ e^{-q tau_b_up} ]  =  Z(b-y) - q * (W(b)/W'(b)) * W(b-y)
double exit_up_transform(const DrawdownProblem& prob);

// E[ int_0^{tau_b_up} e^{-q t} dS_t ]  =  W(b-y) / W'(b)
double discounted_max_increase(const DrawdownProblem& prob);

// E[ e^{-q tau_h_down}; tau_h_down <= tau_b_up ]  =  W(b-y) / W(b-h),  0 < h <= y <= b
double two_sided_down(const DrawdownProblem& prob, double h);

// E[ e^{-q tau_b_up}; tau_b_up <= tau_h_down ]  =  Z(b-y) - (Z(b-h)/W(b-h)) * W(b-y)
double two_sided_up(const DrawdownProblem& prob, double h);

// Unreflected process: E_x[ e^{-u T_b_up}; T_b_up < T_0_down ]  =  W(x)/W(b)
double classic_two_sided_exit(const JumpDiffusionModel& model, double u, double x, double b);

}  // namespace dcds
