#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dcds/cds.hpp"
#include "dcds/levy.hpp"
#include "dcds/mc.hpp"

namespace dcds {

// Everything a CLI run needs, loaded from a flat JSON document. Defaults
// reproduce the reference parameter set (mu = 0.075, a = 0.5, c = 9,
// b = ln 5, r = 0.1, deltas p_tilde = -0.025, alpha_tilde = -5, gamma = -1).
struct RunConfig {
    // model
    double mu = 0.075;
    double sigma = 0.0;
    double jump_rate = 0.5;
    double jump_decay = 9.0;
    // contract
    double p = 0.05;
    double alpha = 10.0;
    double b = 1.6094379124341003;  // ln 5
    double r = 0.1;
    // switch
    double p_hat = 0.025;
    double alpha_hat = 5.0;
    double gamma = -1.0;
    // numerics
    int grid_n = 201;
    double root_residual_tol = 1e-12;
    double quad_rel_tol = 1e-9;
    double harmonic_tol = 1e-3;
    PathConfig mc;

    static RunConfig defaults() { return RunConfig{}; }
    static RunConfig from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;

    // Typed views; each constructor re-validates its invariants.
    JumpDiffusionModel model() const;
    CdsTerms terms() const;
    SwitchTerms switch_terms() const;

    void validate() const;  // throws std::invalid_argument naming the constraint
};

// Loads defaults, overlays the file when path is nonempty, then applies
// "section.key=value" overrides.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

}  // namespace dcds
