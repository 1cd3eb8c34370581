#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcds/cds.hpp"
#include "dcds/levy.hpp"

namespace dcds {

// Path-simulation controls. Paths advance on a dt grid between exactly drawn
// jump epochs (sigma > 0); for sigma = 0 the inter-jump segments are linear
// and are advanced in closed form, so dt is not used. horizon <= 0 selects
// 20/r, which bounds the discount truncation error by e^{-20} ~ 2e-9.
struct PathConfig {
    double dt = 1e-4;
    double horizon = 0.0;
    std::int64_t n_paths = 100000;
    std::uint64_t seed = 20170206ULL;
    bool antithetic = false;

    void validate() const;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_effective = 0;
    double censored_fraction = 0.0;
};

// Simulates the drawdown Y = S - X from Y_0 = y0 until tau_b (default) or the
// horizon, recording tau_h on the way when h is given. Returned estimates:
//   "exit_up"          E[e^{-r tau_b}]
//   "discounted_max"   E[int_0^{tau_b} e^{-rt} dS_t]
// and, when h is present:
//   "down_before_up"   E[e^{-r tau_h}; tau_h <= tau_b]
//   "up_before_down"   E[e^{-r tau_b}; tau_b <= tau_h]
//   "exercise_value"   payoff_at_h * down_before_up  (Y at tau_h creeps to h)
std::map<std::string, McEstimate> simulate_drawdown_functionals(
    const JumpDiffusionModel& model, double y0, double b, std::optional<double> h, double r,
    const PathConfig& cfg,
    double payoff_at_h = std::numeric_limits<double>::quiet_NaN());

// Realized discounted cash flow of the switchable contract under the threshold
// strategy "switch when Y first drops below h".
McEstimate switch_contract_value_mc(const JumpDiffusionModel& model, const CdsTerms& terms,
                                    const SwitchTerms& sw, double h, double y0,
                                    const PathConfig& cfg);

// Estimates E[e^{-u(t ^ tau_h ^ tau_b)} W(b - Y_{t ^ tau_h ^ tau_b})] and the
// Z analogue at each requested time; both are martingales, so the estimates
// should agree across times.
struct MartingaleScan {
    struct TimePoint {
        double t = 0.0;
        McEstimate w_functional;
        McEstimate z_functional;
    };
    std::vector<TimePoint> points;
    double max_pairwise_zscore = 0.0;  // worst |diff| / combined SE across time pairs
    bool consistent = false;           // max_pairwise_zscore <= 3
};

MartingaleScan martingale_scan(const JumpDiffusionModel& model, double y0, double b, double h,
                               double u, const std::vector<double>& times, const PathConfig& cfg);

}  // namespace dcds
