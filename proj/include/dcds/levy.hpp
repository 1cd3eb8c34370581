#pragma once

#include <vector>

namespace dcds {

// Spectrally negative jump-diffusion of the form
//
//   X_t = mu*t + sigma*B_t - sum of Exp(jump_decay) losses arriving at rate jump_rate,
//
// with Laplace exponent psi(l) = mu*l + sigma^2/2 l^2 - jump_rate*l/(l + jump_decay).
// The jump measure has finite total mass, so no small-jump compensation enters psi.
struct JumpDiffusionModel {
    double mu;          // drift per unit time
    double sigma;       // diffusion volatility, >= 0
    double jump_rate;   // Poisson intensity of downward jumps, > 0
    double jump_decay;  // exponential jump-size parameter, > 0

    JumpDiffusionModel(double mu_, double sigma_, double jump_rate_, double jump_decay_);

    bool bounded_variation() const { return sigma == 0.0; }
};

// Real roots of psi(lambda) = u, sorted ascending. Two roots when sigma = 0,
// three when sigma > 0, with the largest being Phi(u), the right inverse of psi.
struct RootSet {
    std::vector<double> roots;
    double phi = 0.0;
    double u = 0.0;
};

// psi(lambda); throws std::domain_error at the pole lambda = -jump_decay.
double laplace_exponent(const JumpDiffusionModel& model, double lambda);

// psi'(lambda); same pole restriction.
double psi_derivative(const JumpDiffusionModel& model, double lambda);

// All real roots of psi(lambda) = u for u >= 0, via the explicit quadratic/cubic
// polynomial followed by Newton polishing against psi(lambda) - u.
// Throws std::runtime_error if any polished residual exceeds residual_tol.
RootSet solve_roots(const JumpDiffusionModel& model, double u, double residual_tol = 1e-12);

}  // namespace dcds
