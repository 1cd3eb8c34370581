#include "dcds/run_config.hpp"

#include <fstream>
#include <stdexcept>

namespace dcds {

namespace {

void read_into(const nlohmann::json& doc, const char* section, const char* key, double& out) {
    if (!doc.contains(section)) return;
    const auto& s = doc.at(section);
    if (!s.contains(key)) return;
    if (!s.at(key).is_number()) {
        throw std::invalid_argument(std::string("config: ") + section + "." + key +
                                    " must be a number");
    }
    out = s.at(key).get<double>();
}

template <typename Int>
void read_into_int(const nlohmann::json& doc, const char* section, const char* key, Int& out) {
    if (!doc.contains(section)) return;
    const auto& s = doc.at(section);
    if (!s.contains(key)) return;
    if (!s.at(key).is_number_integer()) {
        throw std::invalid_argument(std::string("config: ") + section + "." + key +
                                    " must be an integer");
    }
    out = s.at(key).get<Int>();
}

void read_into_bool(const nlohmann::json& doc, const char* section, const char* key, bool& out) {
    if (!doc.contains(section)) return;
    const auto& s = doc.at(section);
    if (!s.contains(key)) return;
    if (!s.at(key).is_boolean()) {
        throw std::invalid_argument(std::string("config: ") + section + "." + key +
                                    " must be a boolean");
    }
    out = s.at(key).get<bool>();
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& doc) {
    RunConfig cfg;
    read_into(doc, "model", "mu", cfg.mu);
    read_into(doc, "model", "sigma", cfg.sigma);
    read_into(doc, "model", "jump_rate", cfg.jump_rate);
    read_into(doc, "model", "jump_decay", cfg.jump_decay);
    read_into(doc, "contract", "p", cfg.p);
    read_into(doc, "contract", "alpha", cfg.alpha);
    read_into(doc, "contract", "b", cfg.b);
    read_into(doc, "contract", "r", cfg.r);
    read_into(doc, "switch", "p_hat", cfg.p_hat);
    read_into(doc, "switch", "alpha_hat", cfg.alpha_hat);
    read_into(doc, "switch", "gamma", cfg.gamma);
    read_into_int(doc, "numerics", "grid_n", cfg.grid_n);
    read_into(doc, "numerics", "root_residual_tol", cfg.root_residual_tol);
    read_into(doc, "numerics", "quad_rel_tol", cfg.quad_rel_tol);
    read_into(doc, "numerics", "harmonic_tol", cfg.harmonic_tol);
    if (doc.contains("numerics") && doc.at("numerics").contains("mc")) {
        const nlohmann::json inner{{"mc", doc.at("numerics").at("mc")}};
        read_into(inner, "mc", "dt", cfg.mc.dt);
        read_into(inner, "mc", "horizon", cfg.mc.horizon);
        read_into_int(inner, "mc", "n_paths", cfg.mc.n_paths);
        std::int64_t seed = static_cast<std::int64_t>(cfg.mc.seed);
        read_into_int(inner, "mc", "seed", seed);
        cfg.mc.seed = static_cast<std::uint64_t>(seed);
        read_into_bool(inner, "mc", "antithetic", cfg.mc.antithetic);
    }
    cfg.validate();
    return cfg;
}

nlohmann::json RunConfig::to_json() const {
    return nlohmann::json{
        {"model",
         {{"mu", mu}, {"sigma", sigma}, {"jump_rate", jump_rate}, {"jump_decay", jump_decay}}},
        {"contract", {{"p", p}, {"alpha", alpha}, {"b", b}, {"r", r}}},
        {"switch", {{"p_hat", p_hat}, {"alpha_hat", alpha_hat}, {"gamma", gamma}}},
        {"numerics",
         {{"grid_n", grid_n},
          {"root_residual_tol", root_residual_tol},
          {"quad_rel_tol", quad_rel_tol},
          {"harmonic_tol", harmonic_tol},
          {"mc",
           {{"dt", mc.dt},
            {"horizon", mc.horizon},
            {"n_paths", mc.n_paths},
            {"seed", static_cast<std::int64_t>(mc.seed)},
            {"antithetic", mc.antithetic}}}}}};
}

JumpDiffusionModel RunConfig::model() const {
    return JumpDiffusionModel(mu, sigma, jump_rate, jump_decay);
}

CdsTerms RunConfig::terms() const { return CdsTerms(p, alpha, b, r); }

SwitchTerms RunConfig::switch_terms() const {
    return SwitchTerms::from_contracts(p, p_hat, alpha, alpha_hat, gamma);
}

void RunConfig::validate() const {
    try {
        (void)model();
        (void)terms();
        (void)switch_terms();
        mc.validate();
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (grid_n < 3) throw std::invalid_argument("config: numerics.grid_n must be >= 3");
    if (!(root_residual_tol > 0.0)) {
        throw std::invalid_argument("config: numerics.root_residual_tol must be > 0");
    }
    if (!(quad_rel_tol > 0.0)) {
        throw std::invalid_argument("config: numerics.quad_rel_tol must be > 0");
    }
    if (!(harmonic_tol > 0.0)) {
        throw std::invalid_argument("config: numerics.harmonic_tol must be > 0");
    }
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    nlohmann::json doc = RunConfig::defaults().to_json();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
        nlohmann::json file_doc;
        try {
            in >> file_doc;
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("config: parse error in '" + path + "': " + e.what());
        }
        doc.merge_patch(file_doc);
    }
    for (const std::string& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("config: --set expects section.key=value, got '" + item +
                                        "'");
        }
        std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        std::string pointer = "/";
        for (char ch : key) pointer += (ch == '.') ? '/' : ch;
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(value);
        } catch (const nlohmann::json::exception&) {
            parsed = value;  // plain string
        }
        doc[nlohmann::json::json_pointer(pointer)] = parsed;
    }
    return RunConfig::from_json(doc);
}

}  // namespace dcds
