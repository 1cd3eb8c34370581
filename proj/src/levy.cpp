#include "dcds/levy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dcds {

JumpDiffusionModel::JumpDiffusionModel(double mu_, double sigma_, double jump_rate_,
                                       double jump_decay_)
    : mu(mu_), sigma(sigma_), jump_rate(jump_rate_), jump_decay(jump_decay_) {
    if (!(std::isfinite(mu) && std::isfinite(sigma) && std::isfinite(jump_rate) &&
          std::isfinite(jump_decay))) {
        throw std::invalid_argument("JumpDiffusionModel: parameters must be finite");
    }
    if (sigma < 0.0) throw std::invalid_argument("JumpDiffusionModel: sigma must be >= 0");
    if (jump_rate <= 0.0) throw std::invalid_argument("JumpDiffusionModel: jump_rate must be > 0");
    if (jump_decay <= 0.0)
        throw std::invalid_argument("JumpDiffusionModel: jump_decay must be > 0");
    if (sigma == 0.0 && mu <= 0.0) {
        // Bounded-variation paths need positive drift; downward subordinators are excluded.
        throw std::invalid_argument("JumpDiffusionModel: sigma = 0 requires mu > 0");
    }
}

double laplace_exponent(const JumpDiffusionModel& m, double lambda) {
    const double denom = lambda + m.jump_decay;
    if (denom == 0.0) {
        throw std::domain_error("laplace_exponent: pole at lambda = -jump_decay");
    }
    return m.mu * lambda + 0.5 * m.sigma * m.sigma * lambda * lambda -
           m.jump_rate * lambda / denom;
}

double psi_derivative(const JumpDiffusionModel& m, double lambda) {
    const double denom = lambda + m.jump_decay;
    if (denom == 0.0) {
        throw std::domain_error("psi_derivative: pole at lambda = -jump_decay");
    }
    return m.mu + m.sigma * m.sigma * lambda - m.jump_rate * m.jump_decay / (denom * denom);
}

namespace {

// Real roots of x^2 + p*x + q = 0 using the numerically stable split.
std::vector<double> quadratic_roots(double p, double q) {
    const double disc = p * p - 4.0 * q;
    if (disc < 0.0) {
        throw std::runtime_error("solve_roots: complex quadratic roots (unexpected for this model family)");
    }
    const double s = std::sqrt(disc);
    const double big = (p >= 0.0) ? (-p - s) / 2.0 : (-p + s) / 2.0;
    if (big == 0.0) return {0.0, -p};
    return {big, q / big};
}

// Real roots of x^3 + a2*x^2 + a1*x + a0 = 0. The model family always has
// three real roots for u > 0; the trigonometric form covers that case, with a
// Cardano fallback should the discriminant come out nonpositive.
std::vector<double> cubic_roots(double a2, double a1, double a0) {
    const double shift = a2 / 3.0;
    const double p = a1 - a2 * a2 / 3.0;
    const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    std::vector<double> out;
    if (disc > 0.0) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            out.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift);
        }
    } else {
        // Single real root via Cardano.
        const double half_q = q / 2.0;
        const double rad = std::sqrt(half_q * half_q + p * p * p / 27.0);
        const double t = std::cbrt(-half_q + rad) + std::cbrt(-half_q - rad);
        out.push_back(t - shift);
    }
    return out;
}

// A few Newton steps against psi(lambda) - u, keeping clear of the pole.
double polish_root(const JumpDiffusionModel& m, double u, double x) {
    const double pole = -m.jump_decay;
    double best = x;
    double best_res = std::abs(laplace_exponent(m, x) - u);
    for (int it = 0; it < 8 && best_res > 0.0; ++it) {
        const double d = psi_derivative(m, x);
        if (d == 0.0) break;
        double step = (laplace_exponent(m, x) - u) / d;
        double next = x - step;
        // Do not let the iteration jump across the pole.
        if ((x - pole) * (next - pole) <= 0.0) next = 0.5 * (x + pole);
        const double res = std::abs(laplace_exponent(m, next) - u);
        if (res < best_res) {
            best = next;
            best_res = res;
        }
        if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x))) break;
        x = next;
    }
    return best;
}

}  // namespace

RootSet solve_roots(const JumpDiffusionModel& m, double u, double residual_tol) {
    if (!(u >= 0.0)) throw std::invalid_argument("solve_roots: u must be >= 0");

    const double c = m.jump_decay, a = m.jump_rate, mu = m.mu;
    std::vector<double> roots;

    if (m.sigma == 0.0) {
        // mu*l^2 + (mu*c - a - u)*l - u*c = 0
        if (u == 0.0) {
            roots = {0.0, (a - mu * c) / mu};
        } else {
            roots = quadratic_roots((mu * c - a - u) / mu, -u * c / mu);
        }
    } else {
        const double s2 = 0.5 * m.sigma * m.sigma;
        // s2*l^3 + (mu + s2*c)*l^2 + (mu*c - a - u)*l - u*c = 0
        if (u == 0.0) {
            roots = quadratic_roots((mu + s2 * c) / s2, (mu * c - a) / s2);
            roots.push_back(0.0);
        } else {
            roots = cubic_roots((mu + s2 * c) / s2, (mu * c - a - u) / s2, -u * c / s2);
        }
    }

    for (double& x : roots) {
        if (x != 0.0) x = polish_root(m, u, x);
        const double res = std::abs(laplace_exponent(m, x) - u);
        if (res > residual_tol) {
            throw std::runtime_error("solve_roots: residual " + std::to_string(res) +
                                     " exceeds tolerance after polishing");
        }
    }
    std::sort(roots.begin(), roots.end());

    const std::size_t expected = (m.sigma == 0.0) ? 2 : 3;
    if (roots.size() != expected) {
        throw std::runtime_error("solve_roots: unexpected root count");
    }
    if (m.sigma > 0.0) {
        // -xi2 < -c < -xi1 <= 0 <= Phi(u); the middle inequalities are strict for u > 0.
        if (!(roots[0] < -c && -c < roots[1] && roots[1] <= 0.0)) {
            throw std::runtime_error("solve_roots: root ordering violated");
        }
    }

    RootSet rs;
    rs.roots = roots;
    rs.phi = roots.back();
    rs.u = u;
    if (rs.phi < 0.0) throw std::runtime_error("solve_roots: Phi(u) must be >= 0");
    return rs;
}

}  // namespace dcds
