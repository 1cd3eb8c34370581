#include "dcds/scale.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dcds {

ScaleEvaluator::ScaleEvaluator(const JumpDiffusionModel& model, double u,
                               double root_separation_tol)
    : model_(model), roots_(solve_roots(model, u)) {
    for (std::size_t i = 0; i + 1 < roots_.roots.size(); ++i) {
        if (roots_.roots[i + 1] - roots_.roots[i] < root_separation_tol) {
            throw std::runtime_error(
                "ScaleEvaluator: near-coincident roots (|r_i - r_j| < " +
                std::to_string(root_separation_tol) + "); confluent form not supported");
        }
    }
    coeffs_.reserve(roots_.roots.size());
    for (double r : roots_.roots) coeffs_.push_back(1.0 / psi_derivative(model_, r));
}

double ScaleEvaluator::W(double x) const {
    if (x < 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s += coeffs_[i] * std::exp(roots_.roots[i] * x);
    return s;
}

double ScaleEvaluator::W_prime(double x) const {
    if (x < 0.0) throw std::domain_error("W_prime: x must be >= 0");
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        s += coeffs_[i] * roots_.roots[i] * std::exp(roots_.roots[i] * x);
    }
    return s;
}

double ScaleEvaluator::W_second(double x) const {
    if (x < 0.0) throw std::domain_error("W_second: x must be >= 0");
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const double r = roots_.roots[i];
        s += coeffs_[i] * r * r * std::exp(r * x);
    }
    return s;
}

double ScaleEvaluator::Z(double x) const {
    if (x <= 0.0) return 1.0;
    const double u = roots_.u;
    if (u == 0.0) return 1.0;
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const double r = roots_.roots[i];
        // A root at 0 only arises for u = 0 (handled above); keep the limit anyway.
        if (std::abs(r) < 1e-14) {
            s += coeffs_[i] * x;
        } else {
            s += coeffs_[i] * (std::exp(r * x) - 1.0) / r;
        }
    }
    return 1.0 + u * s;
}

double ScaleEvaluator::W_esscher(double x) const {
    if (x < 0.0) throw std::domain_error("W_esscher: x must be >= 0");
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        s += coeffs_[i] * std::exp((roots_.roots[i] - roots_.phi) * x);
    }
    return s;
}

double ScaleEvaluator::ratio_W(double x) const {
    const double d = W_prime(x);
    if (d == 0.0) throw std::domain_error("ratio_W: W'(x) = 0");
    return W(x) / d;
}

}  // namespace dcds
