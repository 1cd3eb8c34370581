// Command-line front end: pricing, boundary diagnostics, verification suites,
// and figure-data CSV dumps for the drawdown-CDS library.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dcds/drawdown.hpp"
#include "dcds/mc.hpp"
#include "dcds/run_config.hpp"
#include "dcds/stopping.hpp"
#include "dcds/verification.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

json to_json(const std::vector<CheckResult>& checks) {
    json arr = json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold},
                       {"pass", c.pass}});
    }
    return arr;
}

void print_checks(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks) {
        std::printf("%-52s %12.4e  (tol %.1e)  %s\n", c.name.c_str(), c.value, c.threshold,
                    c.pass ? "pass" : "FAIL");
    }
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        out.push_back(i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
    }
    return out;
}

// ---------------------------------------------------------------- price ----

int cmd_price(const dcds::RunConfig& cfg, double y, bool as_json) {
    const dcds::JumpDiffusionModel model = cfg.model();
    const dcds::ScaleEvaluator eval(model, cfg.r);
    const dcds::CdsTerms terms = cfg.terms();
    const dcds::SwitchTerms sw = cfg.switch_terms();
    const dcds::BoundarySolution sol = dcds::solve_h_star(eval, sw, cfg.b);

    const double cds = dcds::perpetual_cds_value(eval, terms, y);
    const double option = dcds::value_function(sol, eval, sw, cfg.b, y);
    const double total = cds + option;
    std::optional<double> spread;
    if (y < cfg.b) spread = dcds::par_spread_perpetual(eval, cfg.alpha, cfg.b, y);

    if (as_json) {
        json doc{{"y", y},
                 {"h_star", sol.h_star},
                 {"cds_value", cds},
                 {"option_value", option},
                 {"total_value", total},
                 {"par_spread", spread ? json(*spread) : json(nullptr)},
                 {"gamma_window", {{"lower", sol.window.lower}, {"upper", sol.window.upper}}}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("drawdown CDS (mu=%g sigma=%g a=%g c=%g, b=%g r=%g)\n", cfg.mu, cfg.sigma,
                    cfg.jump_rate, cfg.jump_decay, cfg.b, cfg.r);
        std::printf("y            = %.6f\n", y);
        std::printf("h_star       = %.6f\n", sol.h_star);
        std::printf("cds_value    = %.8f\n", cds);
        std::printf("option_value = %.8f\n", option);
        std::printf("total_value  = %.8f\n", total);
        if (spread) {
            std::printf("par_spread   = %.8f\n", *spread);
        } else {
            std::printf("par_spread   = n/a (y = b)\n");
        }
    }
    return kExitOk;
}

// ------------------------------------------------------------- boundary ----

int cmd_boundary(const dcds::RunConfig& cfg, bool as_json) {
    const dcds::JumpDiffusionModel model = cfg.model();
    const dcds::ScaleEvaluator eval(model, cfg.r);
    const dcds::SwitchTerms sw = cfg.switch_terms();
    const dcds::BoundarySolution sol = dcds::solve_h_star(eval, sw, cfg.b);

    if (as_json) {
        json doc{{"h_star", sol.h_star},
                 {"gamma", cfg.gamma},
                 {"gamma_window", {{"lower", sol.window.lower}, {"upper", sol.window.upper}}},
                 {"f_at_0", sol.f_at_0},
                 {"f_at_b", sol.f_at_b},
                 {"pasting_gap", sol.pasting_gap}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("gamma window = (%.6f, %.6f), gamma = %g\n", sol.window.lower,
                    sol.window.upper, cfg.gamma);
        std::printf("f(0) = %.6f, f(b) = %.6f\n", sol.f_at_0, sol.f_at_b);
        std::printf("h_star = %.6f\n", sol.h_star);
        std::printf("smooth-pasting gap = %.3e\n", sol.pasting_gap);
    }
    return kExitOk;
}

// --------------------------------------------------------------- verify ----

void run_analytic_checks(const dcds::RunConfig& cfg, std::vector<CheckResult>& out) {
    const dcds::JumpDiffusionModel model = cfg.model();
    const dcds::ScaleEvaluator eval(model, cfg.r);
    const dcds::SwitchTerms sw = cfg.switch_terms();

    // Scale function Laplace transform versus 1/(psi - r).
    using quad = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double phi = eval.phi();
    double worst_rel = 0.0;
    for (double shift : {0.5, 1.0, 2.0}) {
        const double lambda = phi + shift;
        const double guard = 1.0 / dcds::psi_derivative(model, phi);
        const double x_max = std::log(guard / (shift * 1e-9)) / shift;
        const double integral = quad::integrate(
            [&](double x) { return std::exp(-lambda * x) * eval.W(x); }, 0.0, x_max, 12, 1e-10);
        const double expected = 1.0 / (dcds::laplace_exponent(model, lambda) - cfg.r);
        worst_rel = std::max(worst_rel, std::abs(integral / expected - 1.0));
    }
    out.push_back({"scale transform identity (max rel err)", worst_rel, 1e-6, worst_rel <= 1e-6});

    // Monotone ratio bounded by 1/Phi(r); strictness asserted while the
    // increments stay representable (the curve saturates at the cap).
    bool ratio_ok = true;
    double prev = eval.ratio_W(0.0);
    const double cap = 1.0 / phi;
    for (double x : linspace(0.025, 5.0, 200)) {
        const double cur = eval.ratio_W(x);
        ratio_ok = ratio_ok && cur >= prev && cur <= cap * (1.0 + 1e-14);
        if (x <= 4.0) ratio_ok = ratio_ok && cur > prev;
        prev = cur;
    }
    out.push_back({"W/W' increasing, bounded by 1/Phi(r)", ratio_ok ? 1.0 : 0.0, 1.0, ratio_ok});

    // Uniqueness window machinery.
    const dcds::GammaWindow window = dcds::gamma_window(eval, sw.alpha_tilde, cfg.b);
    out.push_back({"gamma inside admissible window", cfg.gamma, window.upper,
                   window.contains(cfg.gamma)});
    const double fr0 = dcds::f_r_of_b(eval, 0.0);
    out.push_back({"f_r(0) = 0", std::abs(fr0), 1e-12, std::abs(fr0) <= 1e-12});
    bool fr_decreasing = true;
    double fr_prev = fr0;
    for (double b : linspace(0.02, 2.0, 100)) {
        const double cur = dcds::f_r_of_b(eval, b);
        fr_decreasing = fr_decreasing && cur < fr_prev;
        fr_prev = cur;
    }
    out.push_back({"f_r strictly decreasing on [0,2]", fr_decreasing ? 1.0 : 0.0, 1.0,
                   fr_decreasing});

    bool f_decreasing = true;
    int sign_changes = 0;
    double f_prev = dcds::boundary_f(eval, sw, cfg.b, 0.0);
    for (double h : linspace(cfg.b / 200.0, cfg.b, 200)) {
        const double cur = dcds::boundary_f(eval, sw, cfg.b, h);
        f_decreasing = f_decreasing && cur < f_prev;
        if ((cur < 0.0) != (f_prev < 0.0)) ++sign_changes;
        f_prev = cur;
    }
    out.push_back({"f(h) strictly decreasing, one sign change",
                   f_decreasing && sign_changes == 1 ? 1.0 : 0.0, 1.0,
                   f_decreasing && sign_changes == 1});

    // Boundary, pasting.
    const dcds::BoundarySolution sol = dcds::solve_h_star(eval, sw, cfg.b);
    const double f_at_root = std::abs(dcds::boundary_f(eval, sw, cfg.b, sol.h_star));
    out.push_back({"boundary equation residual at h*", f_at_root, 1e-11, f_at_root <= 1e-11});
    const double cont_gap =
        std::abs(dcds::value_function(sol, eval, sw, cfg.b, sol.h_star - 1e-13) -
                 dcds::value_function(sol, eval, sw, cfg.b, sol.h_star + 1e-13));
    out.push_back({"continuous pasting gap", cont_gap, 1e-10, cont_gap <= 1e-10});
    out.push_back({"smooth pasting gap", sol.pasting_gap, 1e-8, sol.pasting_gap <= 1e-8});

    // Generator flatness of the payoff.
    const auto grid = linspace(cfg.b / 200.0, cfg.b * 199.0 / 200.0, cfg.grid_n);
    dcds::GeneratorConfig gen_cfg;
    gen_cfg.quad_rel_tol = cfg.quad_rel_tol;
    const auto residuals = dcds::generator_residual_G(model, eval, sw, cfg.b, grid, gen_cfg);
    double max_res = 0.0;
    for (double v : residuals) max_res = std::max(max_res, std::abs(v));
    out.push_back({"generator flatness max |(L-r)G - r*gamma|", max_res, cfg.harmonic_tol,
                   max_res <= cfg.harmonic_tol});

    // Variational inequality.
    std::vector<double> vi_grid;
    for (double z : grid) {
        if (std::abs(z - sol.h_star) > 0.02) vi_grid.push_back(z);
    }
    const dcds::VariationalReport vi =
        dcds::variational_check(model, eval, sw, cfg.b, sol, vi_grid, gen_cfg, cfg.harmonic_tol);
    out.push_back({"variational inequality (max harmonic defect)", vi.max_abs_harmonic,
                   cfg.harmonic_tol, vi.passed});

    // Threshold optimality and majorant on coarse grids.
    bool optimal = true;
    for (double h : linspace(cfg.b / 51.0, cfg.b * 50.0 / 51.0, 50)) {
        for (double y : linspace(std::max(h, sol.h_star), cfg.b, 50)) {
            const double diff = dcds::candidate_J(eval, sw, cfg.b, sol.h_star, y) -
                                dcds::candidate_J(eval, sw, cfg.b, h, y);
            optimal = optimal && diff >= -1e-12;
        }
    }
    out.push_back({"J_{h*} dominates threshold strategies", optimal ? 1.0 : 0.0, 1.0, optimal});

    bool majorant = true;
    for (double y : linspace(0.0, cfg.b, cfg.grid_n)) {
        const double v = dcds::value_function(sol, eval, sw, cfg.b, y);
        const double g = dcds::payoff_G(eval, sw, cfg.b, y);
        majorant = majorant && v >= g - 1e-12 && (y > sol.h_star || std::abs(v - g) <= 1e-12);
    }
    out.push_back({"value dominates payoff, equality below h*", majorant ? 1.0 : 0.0, 1.0,
                   majorant});
}

void run_mc_checks(const dcds::RunConfig& cfg, std::vector<CheckResult>& out) {
    const dcds::JumpDiffusionModel model = cfg.model();
    const dcds::ScaleEvaluator eval(model, cfg.r);
    const dcds::CdsTerms terms = cfg.terms();
    const dcds::SwitchTerms sw = cfg.switch_terms();
    const dcds::BoundarySolution sol = dcds::solve_h_star(eval, sw, cfg.b);

    const double y0 = 0.75 * cfg.b;
    const double h = std::min(sol.h_star, 0.75 * y0);
    const dcds::DrawdownProblem prob(eval, cfg.b, y0);
    const double g_at_h = dcds::payoff_G(eval, sw, cfg.b, h);

    const auto est =
        dcds::simulate_drawdown_functionals(model, y0, cfg.b, h, cfg.r, cfg.mc, g_at_h);
    const auto push_z = [&](const std::string& name, const dcds::McEstimate& e, double analytic) {
        const double z = e.std_error > 0.0 ? std::abs(e.mean - analytic) / e.std_error : 0.0;
        out.push_back({"mc z-score: " + name, z, 3.0, z <= 3.0});
    };
    push_z("exit-up transform", est.at("exit_up"), dcds::exit_up_transform(prob));
    push_z("discounted max increase", est.at("discounted_max"),
           dcds::discounted_max_increase(prob));
    push_z("down before up", est.at("down_before_up"), dcds::two_sided_down(prob, h));
    push_z("up before down", est.at("up_before_down"), dcds::two_sided_up(prob, h));
    push_z("threshold strategy value", est.at("exercise_value"),
           g_at_h * dcds::two_sided_down(prob, h));

    const double h_star_mc = std::min(sol.h_star, y0);
    const auto total = dcds::switch_contract_value_mc(model, terms, sw, h_star_mc, y0, cfg.mc);
    push_z("total switchable value", total, dcds::total_value(eval, terms, sw, y0));

    const auto scan =
        dcds::martingale_scan(model, y0, cfg.b, h, cfg.r, {0.5, 1.0, 2.0}, cfg.mc);
    out.push_back({"martingale constancy (max pairwise z)", scan.max_pairwise_zscore, 3.0,
                   scan.consistent});
}

int cmd_verify(const dcds::RunConfig& cfg, bool analytic, bool mc, bool as_json) {
    std::vector<CheckResult> analytic_checks, mc_checks;
    if (analytic) run_analytic_checks(cfg, analytic_checks);
    if (mc) run_mc_checks(cfg, mc_checks);

    bool all_pass = true;
    for (const auto& c : analytic_checks) all_pass = all_pass && c.pass;
    for (const auto& c : mc_checks) all_pass = all_pass && c.pass;

    if (as_json) {
        json doc{{"analytic", to_json(analytic_checks)},
                 {"mc", to_json(mc_checks)},
                 {"passed", all_pass}};
        std::cout << doc.dump(2) << "\n";
    } else {
        if (!analytic_checks.empty()) {
            std::printf("analytic checks:\n");
            print_checks(analytic_checks);
        }
        if (!mc_checks.empty()) {
            std::printf("monte carlo checks:\n");
            print_checks(mc_checks);
        }
        std::printf("%s\n", all_pass ? "all checks passed" : "CHECK FAILURES PRESENT");
    }
    return all_pass ? kExitOk : kExitCheckFailure;
}

// -------------------------------------------------------------- figures ----

dcds::RunConfig with_sigma(dcds::RunConfig cfg, double sigma) {
    cfg.sigma = sigma;
    cfg.validate();
    return cfg;
}

int cmd_figures(const dcds::RunConfig& cfg, const std::string& outdir, double eps) {
    namespace fs = std::filesystem;
    fs::create_directories(outdir);

    const dcds::RunConfig cfg0 = with_sigma(cfg, 0.0);
    const dcds::RunConfig cfg2 = with_sigma(cfg, 0.2);
    const dcds::ScaleEvaluator eval0(cfg0.model(), cfg.r);
    const dcds::ScaleEvaluator eval2(cfg2.model(), cfg.r);
    const dcds::SwitchTerms sw = cfg.switch_terms();
    const int n = cfg.grid_n;

    {
        std::ofstream csv(fs::path(outdir) / "fig1_scale.csv");
        csv << "x,w_esscher_sigma0,w_ratio_sigma0,w_esscher_sigma02,w_ratio_sigma02\n";
        for (double x : linspace(0.0, 5.0, n)) {
            csv << x << ',' << eval0.W_esscher(x) << ',' << eval0.ratio_W(x) << ','
                << eval2.W_esscher(x) << ',' << eval2.ratio_W(x) << '\n';
        }
    }
    {
        std::ofstream csv(fs::path(outdir) / "fig2_roots.csv");
        csv << "b,f_r_sigma0,f_r_sigma02,h,f_sigma0,f_sigma02\n";
        const auto bs = linspace(0.0, 2.0, n);
        const auto hs = linspace(0.0, cfg.b, n);
        for (int i = 0; i < n; ++i) {
            csv << bs[i] << ',' << dcds::f_r_of_b(eval0, bs[i]) << ','
                << dcds::f_r_of_b(eval2, bs[i]) << ',' << hs[i] << ','
                << dcds::boundary_f(eval0, sw, cfg.b, hs[i]) << ','
                << dcds::boundary_f(eval2, sw, cfg.b, hs[i]) << '\n';
        }
    }
    {
        const dcds::BoundarySolution sol0 = dcds::solve_h_star(eval0, sw, cfg.b);
        const dcds::BoundarySolution sol2 = dcds::solve_h_star(eval2, sw, cfg.b);
        // Below the threshold the strategy stops at once and collects G(y).
        const auto j_curve = [&](const dcds::ScaleEvaluator& eval, double h, double y) {
            if (y < h) return dcds::payoff_G(eval, sw, cfg.b, y);
            return dcds::candidate_J(eval, sw, cfg.b, h, y);
        };
        std::ofstream csv(fs::path(outdir) / "fig3_value.csv");
        csv << "y,g_sigma0,j_minus_sigma0,j_plus_sigma0,value_sigma0,"
               "g_sigma02,j_minus_sigma02,j_plus_sigma02,value_sigma02\n";
        for (double y : linspace(0.0, cfg.b, n)) {
            csv << y << ',' << dcds::payoff_G(eval0, sw, cfg.b, y) << ','
                << j_curve(eval0, sol0.h_star - eps, y) << ','
                << j_curve(eval0, sol0.h_star + eps, y) << ','
                << dcds::value_function(sol0, eval0, sw, cfg.b, y) << ','
                << dcds::payoff_G(eval2, sw, cfg.b, y) << ','
                << j_curve(eval2, sol2.h_star - eps, y) << ','
                << j_curve(eval2, sol2.h_star + eps, y) << ','
                << dcds::value_function(sol2, eval2, sw, cfg.b, y) << '\n';
        }
    }
    {
        dcds::GeneratorConfig gen_cfg;
        gen_cfg.quad_rel_tol = cfg.quad_rel_tol;
        std::ofstream csv(fs::path(outdir) / "fig4_generator.csv");
        csv << "y,generator_sigma0,generator_sigma02\n";
        const auto grid = linspace(cfg.b / 200.0, cfg.b * 199.0 / 200.0, n);
        const auto res0 =
            dcds::generator_residual_G(cfg0.model(), eval0, sw, cfg.b, grid, gen_cfg);
        const auto res2 =
            dcds::generator_residual_G(cfg2.model(), eval2, sw, cfg.b, grid, gen_cfg);
        for (int i = 0; i < n; ++i) {
            csv << grid[i] << ',' << res0[i] + cfg.r * sw.gamma << ','
                << res2[i] + cfg.r * sw.gamma << '\n';
        }
    }
    std::printf("wrote fig1_scale.csv fig2_roots.csv fig3_value.csv fig4_generator.csv to %s\n",
                outdir.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perpetual drawdown-CDS pricing and verification"};
    app.require_subcommand(1);

    std::string config_path;
    if (const char* env = std::getenv("DCDS_CONFIG")) config_path = env;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "JSON config file (env DCDS_CONFIG)");
    app.add_option("--set", overrides, "override config entries, section.key=value");

    auto* price = app.add_subcommand("price", "price the switchable contract at a drawdown y");
    double y = 1.0;
    bool price_json = false;
    price->add_option("--y", y, "initial drawdown")->required();
    price->add_flag("--json", price_json, "machine-readable output");

    auto* boundary = app.add_subcommand("boundary", "solve the switch boundary h*");
    bool boundary_json = false;
    boundary->add_flag("--json", boundary_json, "machine-readable output");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    bool v_analytic = false, v_mc = false, v_all = false, verify_json = false;
    verify->add_flag("--analytic", v_analytic, "analytic identities and pasting");
    verify->add_flag("--mc", v_mc, "Monte Carlo oracle comparison");
    verify->add_flag("--all", v_all, "both suites");
    verify->add_flag("--json", verify_json, "machine-readable output");

    auto* figures = app.add_subcommand("figures", "dump figure data as CSV");
    std::string outdir;
    double eps = 0.1;
    figures->add_option("--out", outdir, "output directory")->required();
    figures->add_option("--eps", eps, "offset for the sub-optimal threshold curves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const dcds::RunConfig cfg = dcds::load_config(config_path, overrides);
        if (*price) return cmd_price(cfg, y, price_json);
        if (*boundary) return cmd_boundary(cfg, boundary_json);
        if (*verify) {
            const bool run_mc_suite = v_mc || v_all;
            const bool run_analytic_suite = v_analytic || v_all || !run_mc_suite;
            return cmd_verify(cfg, run_analytic_suite, run_mc_suite, verify_json);
        }
        if (*figures) return cmd_figures(cfg, outdir, eps);
    } catch (const dcds::WindowViolation& e) {
        std::cerr << "WindowViolation: " << e.what() << "\n";
        return kExitCheckFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
