#include "dcds/cds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dcds {

CdsTerms::CdsTerms(double p_, double alpha_, double b_, double r_)
    : p(p_), alpha(alpha_), b(b_), r(r_) {
    if (!(b > 0.0)) throw std::invalid_argument("CdsTerms: b must be > 0");
    if (!(r > 0.0)) throw std::invalid_argument("CdsTerms: r must be > 0");
    if (!(alpha >= 0.0)) throw std::invalid_argument("CdsTerms: alpha must be >= 0");
    if (!std::isfinite(p)) throw std::invalid_argument("CdsTerms: p must be finite");
}

SwitchTerms::SwitchTerms(double p_tilde_, double alpha_tilde_, double gamma_, double q_ratio_)
    : p_tilde(p_tilde_), alpha_tilde(alpha_tilde_), gamma(gamma_), q_ratio(q_ratio_) {
    if (!(p_tilde < 0.0)) throw std::invalid_argument("SwitchTerms: p_tilde must be < 0");
    if (!(alpha_tilde < 0.0)) throw std::invalid_argument("SwitchTerms: alpha_tilde must be < 0");
    if (!(gamma <= 0.0)) throw std::invalid_argument("SwitchTerms: gamma must be <= 0");
}

SwitchTerms SwitchTerms::from_contracts(double p, double p_hat, double alpha, double alpha_hat,
                                        double gamma) {
    const double q = alpha != 0.0 ? alpha_hat / alpha : std::numeric_limits<double>::quiet_NaN();
    return SwitchTerms(p_hat - p, alpha_hat - alpha, gamma, q);
}

namespace {
void check_y(double b, double y, const char* who) {
    if (!(y >= 0.0 && y <= b)) {
        throw std::domain_error(std::string(who) + ": y must lie in [0, b]");
    }
}
}  // namespace

double perpetual_cds_value(const ScaleEvaluator& eval_r, double p, double alpha, double b,
                           double y) {
    check_y(b, y, "perpetual_cds_value");
    const double r = eval_r.u();
    return alpha * eval_r.Z(b - y) -
           (p + r * alpha * eval_r.W(b)) / eval_r.W_prime(b) * eval_r.W(b - y);
}

double perpetual_cds_value(const ScaleEvaluator& eval_r, const CdsTerms& terms, double y) {
    if (terms.r != eval_r.u()) {
        throw std::invalid_argument("perpetual_cds_value: evaluator rate differs from terms.r");
    }
    return perpetual_cds_value(eval_r, terms.p, terms.alpha, terms.b, y);
}

double par_spread_perpetual(const ScaleEvaluator& eval_r, double alpha, double b, double y) {
    check_y(b, y, "par_spread_perpetual");
    const double denom = eval_r.W(b - y) / eval_r.W_prime(b);
    // W(0) = 0 for unbounded variation only up to rounding in the coefficient
    // sum; gate on the natural scale of the ratio.
    if (!(denom > 1e-12 * eval_r.W(b) / eval_r.W_prime(b))) {
        throw std::domain_error("par_spread_perpetual: discounted max-increase vanishes at y = b");
    }
    const double r = eval_r.u();
    const double protection =
        eval_r.Z(b - y) - r * (eval_r.W(b) / eval_r.W_prime(b)) * eval_r.W(b - y);
    return alpha * protection / denom;
}

double payoff_G(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b, double y) {
    check_y(b, y, "payoff_G");
    return perpetual_cds_value(eval_r, sw.p_tilde, sw.alpha_tilde, b, y) - sw.gamma;
}

double payoff_G_prime(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b, double y) {
    check_y(b, y, "payoff_G_prime");
    const double r = eval_r.u();
    const double k = (sw.p_tilde + r * sw.alpha_tilde * eval_r.W(b)) / eval_r.W_prime(b);
    return -sw.alpha_tilde * r * eval_r.W(b - y) + k * eval_r.W_prime(b - y);
}

double payoff_G_second(const ScaleEvaluator& eval_r, const SwitchTerms& sw, double b, double y) {
    check_y(b, y, "payoff_G_second");
    const double r = eval_r.u();
    const double k = (sw.p_tilde + r * sw.alpha_tilde * eval_r.W(b)) / eval_r.W_prime(b);
    return sw.alpha_tilde * r * eval_r.W_prime(b - y) - k * eval_r.W_second(b - y);
}

}  // namespace dcds
