#include "dcds/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>

#include "dcds/rng.hpp"
#include "dcds/scale.hpp"

namespace dcds {

void PathConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("PathConfig: dt must be > 0");
    if (!(horizon >= 0.0)) throw std::invalid_argument("PathConfig: horizon must be >= 0");
    if (n_paths < 1) throw std::invalid_argument("PathConfig: n_paths must be >= 1");
    if (antithetic && (n_paths % 2) != 0) {
        throw std::invalid_argument("PathConfig: antithetic runs need an even n_paths");
    }
}

namespace {

unsigned worker_count() {
    if (const char* env = std::getenv("DCDS_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

double effective_horizon(const PathConfig& cfg, double r) {
    return cfg.horizon > 0.0 ? cfg.horizon : 20.0 / r;
}

struct PathOutcome {
    double disc_tau_b = 0.0;   // e^{-r tau_b}, 0 if censored
    double disc_tau_h = 0.0;   // e^{-r tau_h}, 0 if h never hit before tau_b
    double pv_ds_before = 0.0; // discounted dS accrued on [0, tau_h)
    double pv_ds_after = 0.0;  // discounted dS accrued on [tau_h, tau_b ^ horizon)
    bool hit_b = false;
    bool hit_h = false;
};

struct EngineParams {
    double y0 = 0.0;
    double b = 0.0;
    double h = -1.0;  // < 0: no lower barrier tracked
    double r = 0.0;
    double dt = 0.0;
    double horizon = 0.0;
};

// sigma = 0: between jumps the drawdown declines linearly at rate mu (and sits
// at zero while the maximum grows), so segments are advanced in closed form.
// Barrier crossings and dS integrals are exact; no time-discretization enters.
PathOutcome run_path_bounded_variation(const JumpDiffusionModel& m, const EngineParams& p,
                                       Xoshiro256& rng_jump) {
    PathOutcome out;
    const bool track_h = p.h >= 0.0;
    double t = 0.0;
    double y = p.y0;
    if (track_h && y <= p.h) {
        out.hit_h = true;
        out.disc_tau_h = 1.0;
    }

    while (true) {
        const double wait = rng_jump.next_exponential(m.jump_rate);
        const double t_jump = t + wait;
        const bool censor = t_jump >= p.horizon;
        const double t_end = censor ? p.horizon : t_jump;

        if (track_h && !out.hit_h && y > p.h) {
            const double t_h = t + (y - p.h) / m.mu;
            if (t_h <= t_end) {
                out.hit_h = true;
                out.disc_tau_h = std::exp(-p.r * t_h);
            }
        }
        const double t_zero = t + y / m.mu;
        double y_end;
        if (t_zero < t_end) {
            // At-max stretch: S grows at rate mu, discounted in closed form.
            const double pv =
                m.mu / p.r * (std::exp(-p.r * t_zero) - std::exp(-p.r * t_end));
            (out.hit_h ? out.pv_ds_after : out.pv_ds_before) += pv;
            y_end = 0.0;
        } else {
            y_end = y - m.mu * (t_end - t);
        }
        if (censor) break;

        const double jump = rng_jump.next_exponential(m.jump_decay);
        y = y_end + jump;
        t = t_jump;
        if (y > p.b) {
            out.hit_b = true;
            out.disc_tau_b = std::exp(-p.r * t);
            break;
        }
    }
    return out;
}

// sigma > 0: Euler steps on a dt grid between exactly drawn jump epochs, with
// reflection at zero feeding dS and barrier checks at step resolution.
PathOutcome run_path_diffusion(const JumpDiffusionModel& m, const EngineParams& p,
                               Xoshiro256& rng_jump, Xoshiro256& rng_diff, bool flip) {
    PathOutcome out;
    const bool track_h = p.h >= 0.0;
    NormalSampler normal;

    double t = 0.0;
    double y = p.y0;
    double disc = 1.0;
    if (track_h && y <= p.h) {
        out.hit_h = true;
        out.disc_tau_h = 1.0;
    }

    const double drift = m.mu * p.dt;
    const double vol = m.sigma * std::sqrt(p.dt);
    const double decay = std::exp(-p.r * p.dt);
    const double sign = flip ? -1.0 : 1.0;

    bool done = false;
    while (!done) {
        const double wait = rng_jump.next_exponential(m.jump_rate);
        const double t_jump = t + wait;
        const bool censor = t_jump >= p.horizon;
        const double t_end = censor ? p.horizon : t_jump;

        double remaining = t_end - t;
        while (remaining > 0.0) {
            const bool full = remaining >= p.dt;
            const double step = full ? p.dt : remaining;
            const double z = sign * normal(rng_diff);
            const double dx = full ? (drift + vol * z)
                                   : (m.mu * step + m.sigma * std::sqrt(step) * z);
            disc *= full ? decay : std::exp(-p.r * step);
            y -= dx;
            if (y < 0.0) {
                (out.hit_h ? out.pv_ds_after : out.pv_ds_before) += disc * (-y);
                y = 0.0;
            } else if (y > p.b) {
                out.hit_b = true;
                out.disc_tau_b = disc;
                done = true;
                break;
            }
            if (track_h && !out.hit_h && y < p.h) {
                out.hit_h = true;
                out.disc_tau_h = disc;
            }
            remaining -= step;
        }
        t = t_end;
        if (done || censor) break;

        const double jump = rng_jump.next_exponential(m.jump_decay);
        y += jump;
        t = t_jump;
        if (y > p.b) {
            out.hit_b = true;
            out.disc_tau_b = disc;
            break;
        }
    }
    return out;
}

PathOutcome run_path(const JumpDiffusionModel& m, const EngineParams& p, std::uint64_t seed,
                     std::int64_t path_index, bool antithetic) {
    const std::uint64_t unit = antithetic ? static_cast<std::uint64_t>(path_index >> 1)
                                          : static_cast<std::uint64_t>(path_index);
    const bool flip = antithetic && (path_index & 1);
    Xoshiro256 rng_jump(seed, unit * 2);
    if (m.sigma == 0.0) {
        return run_path_bounded_variation(m, p, rng_jump);
    }
    Xoshiro256 rng_diff(seed, unit * 2 + 1);
    return run_path_diffusion(m, p, rng_jump, rng_diff, flip);
}

std::vector<PathOutcome> run_all_paths(const JumpDiffusionModel& m, const EngineParams& p,
                                       const PathConfig& cfg) {
    std::vector<PathOutcome> outcomes(static_cast<std::size_t>(cfg.n_paths));
    const unsigned n_workers =
        std::min<unsigned>(worker_count(), static_cast<unsigned>(cfg.n_paths));
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    const std::int64_t chunk = (cfg.n_paths + n_workers - 1) / n_workers;
    for (unsigned w = 0; w < n_workers; ++w) {
        const std::int64_t lo = static_cast<std::int64_t>(w) * chunk;
        const std::int64_t hi = std::min<std::int64_t>(lo + chunk, cfg.n_paths);
        if (lo >= hi) break;
        workers.emplace_back([&, lo, hi] {
            for (std::int64_t i = lo; i < hi; ++i) {
                outcomes[static_cast<std::size_t>(i)] =
                    run_path(m, p, cfg.seed, i, cfg.antithetic);
            }
        });
    }
    for (auto& th : workers) th.join();
    return outcomes;
}

// Mean and standard error with a fixed, thread-count-independent reduction
// order; antithetic runs aggregate over pair means.
McEstimate summarize(const std::vector<PathOutcome>& outcomes, bool antithetic,
                     const std::function<double(const PathOutcome&)>& f) {
    const std::size_t n_units = antithetic ? outcomes.size() / 2 : outcomes.size();
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t k = 0; k < n_units; ++k) {
        const double v = antithetic
                             ? 0.5 * (f(outcomes[2 * k]) + f(outcomes[2 * k + 1]))
                             : f(outcomes[k]);
        sum += v;
        sum_sq += v * v;
    }
    McEstimate est;
    est.n_effective = static_cast<std::int64_t>(n_units);
    est.mean = sum / static_cast<double>(n_units);
    if (n_units > 1) {
        const double var =
            std::max(0.0, (sum_sq - sum * sum / static_cast<double>(n_units)) /
                              static_cast<double>(n_units - 1));
        est.std_error = std::sqrt(var / static_cast<double>(n_units));
    }
    std::size_t censored = 0;
    for (const PathOutcome& o : outcomes) censored += o.hit_b ? 0 : 1;
    est.censored_fraction = static_cast<double>(censored) / static_cast<double>(outcomes.size());
    return est;
}

EngineParams make_params(const JumpDiffusionModel& model, double y0, double b,
                         std::optional<double> h, double r, const PathConfig& cfg) {
    if (!(b > 0.0)) throw std::invalid_argument("mc: b must be > 0");
    if (!(y0 >= 0.0 && y0 <= b)) throw std::invalid_argument("mc: y0 must lie in [0, b]");
    if (!(r > 0.0)) throw std::invalid_argument("mc: r must be > 0");
    if (h && !(*h > 0.0 && *h <= y0)) {
        throw std::invalid_argument("mc: h must lie in (0, y0]");
    }
    (void)model;
    EngineParams p;
    p.y0 = y0;
    p.b = b;
    p.h = h ? *h : -1.0;
    p.r = r;
    p.dt = cfg.dt;
    p.horizon = effective_horizon(cfg, r);
    return p;
}

}  // namespace

std::map<std::string, McEstimate> simulate_drawdown_functionals(
    const JumpDiffusionModel& model, double y0, double b, std::optional<double> h, double r,
    const PathConfig& cfg, double payoff_at_h) {
    cfg.validate();
    const EngineParams p = make_params(model, y0, b, h, r, cfg);
    const std::vector<PathOutcome> outcomes = run_all_paths(model, p, cfg);

    std::map<std::string, McEstimate> estimates;
    estimates["exit_up"] =
        summarize(outcomes, cfg.antithetic, [](const PathOutcome& o) { return o.disc_tau_b; });
    estimates["discounted_max"] = summarize(outcomes, cfg.antithetic, [](const PathOutcome& o) {
        return o.pv_ds_before + o.pv_ds_after;
    });
    if (h) {
        estimates["down_before_up"] = summarize(
            outcomes, cfg.antithetic, [](const PathOutcome& o) { return o.disc_tau_h; });
        estimates["up_before_down"] = summarize(outcomes, cfg.antithetic, [](const PathOutcome& o) {
            return o.hit_h ? 0.0 : o.disc_tau_b;
        });
        if (!std::isnan(payoff_at_h)) {
            estimates["exercise_value"] =
                summarize(outcomes, cfg.antithetic, [payoff_at_h](const PathOutcome& o) {
                    return payoff_at_h * o.disc_tau_h;
                });
        }
    }
    return estimates;
}

McEstimate switch_contract_value_mc(const JumpDiffusionModel& model, const CdsTerms& terms,
                                    const SwitchTerms& sw, double h, double y0,
                                    const PathConfig& cfg) {
    cfg.validate();
    const EngineParams p = make_params(model, y0, terms.b, h, terms.r, cfg);
    const std::vector<PathOutcome> outcomes = run_all_paths(model, p, cfg);

    const double p_hat = terms.p + sw.p_tilde;
    const double alpha_hat = terms.alpha + sw.alpha_tilde;
    return summarize(outcomes, cfg.antithetic, [&](const PathOutcome& o) {
        double v = -terms.p * o.pv_ds_before;
        if (o.hit_h) {
            v += -p_hat * o.pv_ds_after - sw.gamma * o.disc_tau_h;
        }
        if (o.hit_b) {
            v += o.disc_tau_b * (o.hit_h ? alpha_hat : terms.alpha);
        }
        return v;
    });
}

namespace {

// One record of the stopped functionals per requested time.
struct ScanPath {
    std::vector<double> w_values;
    std::vector<double> z_values;
};

ScanPath scan_path_bounded_variation(const JumpDiffusionModel& m, const ScaleEvaluator& eval,
                                     double y0, double b, double h, double u,
                                     const std::vector<double>& times, Xoshiro256& rng_jump) {
    ScanPath rec;
    rec.w_values.resize(times.size());
    rec.z_values.resize(times.size());
    const double t_max = times.back();

    double t = 0.0, y = y0;
    std::size_t next = 0;
    bool stopped = h > 0.0 && y <= h;  // tau_h = 0 at or below h
    double stop_disc = 1.0, stop_y = y;

    while (!stopped && next < times.size()) {
        const double wait = rng_jump.next_exponential(m.jump_rate);
        const double t_jump = t + wait;
        // Linear decline within the segment; record requested times as they pass.
        // h = 0 is never crossed: the drawdown reflects at zero.
        const double t_h = h > 0.0 ? t + (y - h) / m.mu
                                   : std::numeric_limits<double>::infinity();
        const double seg_end = std::min(t_jump, t_max + 1e-12);
        while (next < times.size() && times[next] <= seg_end && times[next] <= t_h) {
            const double yy = std::max(y - m.mu * (times[next] - t), 0.0);
            rec.w_values[next] = std::exp(-u * times[next]) * eval.W(b - yy);
            rec.z_values[next] = std::exp(-u * times[next]) * eval.Z(b - yy);
            ++next;
        }
        if (t_h <= seg_end) {
            stopped = true;
            stop_disc = std::exp(-u * t_h);
            stop_y = h;
            break;
        }
        if (t_jump > t_max) break;
        const double jump = rng_jump.next_exponential(m.jump_decay);
        y = std::max(y - m.mu * (t_jump - t), 0.0) + jump;
        t = t_jump;
        if (y > b) {
            stopped = true;
            stop_disc = std::exp(-u * t);
            stop_y = y;  // overshoot: W(b - y) = 0, Z = 1
        }
    }
    for (std::size_t i = next; i < times.size(); ++i) {
        rec.w_values[i] = stop_disc * eval.W(b - stop_y);
        rec.z_values[i] = stop_disc * eval.Z(b - stop_y);
    }
    return rec;
}

ScanPath scan_path_diffusion(const JumpDiffusionModel& m, const ScaleEvaluator& eval, double y0,
                             double b, double h, double u, const std::vector<double>& times,
                             double dt, Xoshiro256& rng_jump, Xoshiro256& rng_diff, bool flip) {
    ScanPath rec;
    rec.w_values.resize(times.size());
    rec.z_values.resize(times.size());
    const double t_max = times.back();
    NormalSampler normal;

    double t = 0.0, y = y0, disc = 1.0;
    std::size_t next = 0;
    bool stopped = y < h || y > b;
    const double drift = m.mu * dt;
    const double vol = m.sigma * std::sqrt(dt);
    const double decay = std::exp(-u * dt);
    const double sign = flip ? -1.0 : 1.0;

    while (!stopped && next < times.size() && times[next] <= 0.0) {
        rec.w_values[next] = eval.W(b - y0);
        rec.z_values[next] = eval.Z(b - y0);
        ++next;
    }

    while (!stopped && next < times.size()) {
        const double wait = rng_jump.next_exponential(m.jump_rate);
        const double t_jump = std::min(t + wait, t_max + dt);
        double remaining = t_jump - t;
        while (remaining > 0.0 && !stopped) {
            const bool full = remaining >= dt;
            const double step = full ? dt : remaining;
            const double z = sign * normal(rng_diff);
            y -= full ? (drift + vol * z) : (m.mu * step + m.sigma * std::sqrt(step) * z);
            if (y < 0.0) y = 0.0;
            disc *= full ? decay : std::exp(-u * step);
            t += step;
            stopped = y < h || y > b;
            while (!stopped && next < times.size() && times[next] <= t) {
                rec.w_values[next] = disc * eval.W(b - y);
                rec.z_values[next] = disc * eval.Z(b - y);
                ++next;
            }
            remaining -= step;
        }
        if (stopped) break;
        if (t >= t_max) break;
        const double jump = rng_jump.next_exponential(m.jump_decay);
        y += jump;
        stopped = y > b;
    }
    for (std::size_t i = next; i < times.size(); ++i) {
        rec.w_values[i] = disc * eval.W(b - y);
        rec.z_values[i] = disc * eval.Z(b - y);
    }
    return rec;
}

}  // namespace

MartingaleScan martingale_scan(const JumpDiffusionModel& model, double y0, double b, double h,
                               double u, const std::vector<double>& times,
                               const PathConfig& cfg) {
    cfg.validate();
    if (!(h >= 0.0 && h <= y0 && y0 <= b)) {
        throw std::invalid_argument("martingale_scan: need 0 <= h <= y0 <= b");
    }
    if (times.empty() || !std::is_sorted(times.begin(), times.end()) || times.front() < 0.0) {
        throw std::invalid_argument("martingale_scan: times must be sorted and nonnegative");
    }
    if (!(u > 0.0)) throw std::invalid_argument("martingale_scan: u must be > 0");

    const ScaleEvaluator eval(model, u);
    const std::size_t n = static_cast<std::size_t>(cfg.n_paths);
    std::vector<ScanPath> records(n);
    const unsigned n_workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(n));
    std::vector<std::thread> workers;
    const std::size_t chunk = (n + n_workers - 1) / n_workers;
    for (unsigned w = 0; w < n_workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(lo + chunk, n);
        if (lo >= hi) break;
        workers.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) {
                const std::uint64_t unit =
                    cfg.antithetic ? static_cast<std::uint64_t>(i >> 1) : i;
                const bool flip = cfg.antithetic && (i & 1);
                Xoshiro256 rng_jump(cfg.seed, unit * 2);
                if (model.sigma == 0.0) {
                    records[i] = scan_path_bounded_variation(model, eval, y0, b, h, u, times,
                                                             rng_jump);
                } else {
                    Xoshiro256 rng_diff(cfg.seed, unit * 2 + 1);
                    records[i] = scan_path_diffusion(model, eval, y0, b, h, u, times, cfg.dt,
                                                     rng_jump, rng_diff, flip);
                }
            }
        });
    }
    for (auto& th : workers) th.join();

    MartingaleScan scan;
    for (std::size_t j = 0; j < times.size(); ++j) {
        MartingaleScan::TimePoint tp;
        tp.t = times[j];
        for (int which = 0; which < 2; ++which) {
            double sum = 0.0, sum_sq = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double v =
                    which == 0 ? records[i].w_values[j] : records[i].z_values[j];
                sum += v;
                sum_sq += v * v;
            }
            McEstimate est;
            est.n_effective = static_cast<std::int64_t>(n);
            est.mean = sum / static_cast<double>(n);
            if (n > 1) {
                const double var = std::max(
                    0.0, (sum_sq - sum * sum / static_cast<double>(n)) /
                             static_cast<double>(n - 1));
                est.std_error = std::sqrt(var / static_cast<double>(n));
            }
            (which == 0 ? tp.w_functional : tp.z_functional) = est;
        }
        scan.points.push_back(tp);
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < scan.points.size(); ++i) {
        for (std::size_t j = i + 1; j < scan.points.size(); ++j) {
            for (int which = 0; which < 2; ++which) {
                const McEstimate& a =
                    which == 0 ? scan.points[i].w_functional : scan.points[i].z_functional;
                const McEstimate& b2 =
                    which == 0 ? scan.points[j].w_functional : scan.points[j].z_functional;
                const double se =
                    std::sqrt(a.std_error * a.std_error + b2.std_error * b2.std_error);
                if (se > 0.0) {
                    worst = std::max(worst, std::abs(a.mean - b2.mean) / se);
                }
            }
        }
    }
    scan.max_pairwise_zscore = worst;
    scan.consistent = worst <= 3.0;
    return scan;
}

}  // namespace dcds
