#pragma once

#include <limits>

#include "dcds/scale.hpp"

namespace dcds {

// Economics of the outright perpetual drawdown CDS: the buyer pays premium p
// on increments of the running maximum and receives alpha at default, with
// default triggered when the drawdown exceeds b. Monetary amounts are in
// contract currency units; rates are per annum.
struct CdsTerms {
    double p;      // premium rate per unit of running-max increase
    double alpha;  // default payment, >= 0
    double b;      // default drawdown level, > 0
    double r;      // discount rate, > 0

    CdsTerms(double p_, double alpha_, double b_, double r_);
};

// Deltas of the contract switch: new-minus-old premium rate and coverage,
// plus the switching cost. The optimal-stopping theory requires all three
// nonpositive (strictly negative for the deltas).
struct SwitchTerms {
    double p_tilde;      // p_hat - p, < 0
    double alpha_tilde;  // alpha_hat - alpha, < 0
    double gamma;        // switching cost, <= 0
    double q_ratio;      // alpha_hat / alpha, informational (NaN if unknown)

    SwitchTerms(double p_tilde_, double alpha_tilde_, double gamma_,
                double q_ratio_ = std::numeric_limits<double>::quiet_NaN());

    static SwitchTerms from_contracts(double p, double p_hat, double alpha, double alpha_hat,
                                      double gamma);
};

// Perpetual CDS value from the buyer's side,
//   C(y) = alpha * Z(b-y) - (p + r*alpha*W(b)) / W'(b) * W(b-y),
// linear in (p, alpha); r is the evaluator's rate. Accepts deltas of either sign.
double perpetual_cds_value(const ScaleEvaluator& eval_r, double p, double alpha, double b,
                           double y);
double perpetual_cds_value(const ScaleEvaluator& eval_r, const CdsTerms& terms, double y);

// Premium rate making the perpetual contract worth zero at y; requires y < b
// when the denominator W(b-y)/W'(b) vanishes at y = b.
double par_spread_perpetual(const ScaleEvaluator& eval_r, double alpha, double b, double y);

// Switch-option payoff G(y) = C(y; p_tilde, alpha_tilde) - gamma and its
// derivatives in y (one-sided at the endpoints).
double payoff_G(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b, double y);
double payoff_G_prime(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b, double y);
double payoff_G_second(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b, double y);

}  // namespace dcds
