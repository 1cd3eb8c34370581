#pragma once

#include <vector>

#include "dcds/levy.hpp"

namespace dcds {

// Closed-form scale functions for the jump-diffusion model: with roots r_i of
// psi(l) = u and coefficients 1/psi'(r_i),
//
//   W(x) = sum_i coeff_i * exp(r_i * x)        for x >= 0, 0 for x < 0,
//   Z(x) = 1 + u * integral_0^x W,
//
// together with termwise derivatives and the Esscher-transformed scale
// function W_{Phi(u)}(x) = exp(-Phi(u) x) W(x).
//
// Immutable after construction; evaluations are pure and thread-safe.
class ScaleEvaluator {
  public:
    // Throws std::runtime_error if two roots are closer than root_separation_tol
    // (the confluent partial-fraction form is deliberately not implemented).
    ScaleEvaluator(const JumpDiffusionModel& model, double u,
                   double root_separation_tol = 1e-8);

    const JumpDiffusionModel& model() const { return model_; }
    double u() const { return roots_.u; }
    double phi() const { return roots_.phi; }
    const RootSet& roots() const { return roots_; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    double W(double x) const;
    double W_prime(double x) const;   // right derivative at x = 0
    double W_second(double x) const;  // right second derivative at x = 0
    double Z(double x) const;
    double W_esscher(double x) const;
    double ratio_W(double x) const;   // W(x)/W'(x)

  private:
    JumpDiffusionModel model_;
    RootSet roots_;
    std::vector<double> coeffs_;
};

}  // namespace dcds
