#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "dcds/run_config.hpp"

using namespace dcds;

TEST_CASE("defaults reproduce the reference parameter set and validate") {
    const RunConfig cfg = RunConfig::defaults();
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.mu == 0.075);
    CHECK(cfg.sigma == 0.0);
    CHECK(cfg.jump_rate == 0.5);
    CHECK(cfg.jump_decay == 9.0);
    CHECK(cfg.b == doctest::Approx(std::log(5.0)).epsilon(1e-15));
    CHECK(cfg.r == 0.1);
    const SwitchTerms sw = cfg.switch_terms();
    CHECK(sw.p_tilde == doctest::Approx(-0.025));
    CHECK(sw.alpha_tilde == doctest::Approx(-5.0));
    CHECK(sw.gamma == -1.0);
}

TEST_CASE("json round trip") {
    const RunConfig cfg = RunConfig::defaults();
    const RunConfig back = RunConfig::from_json(cfg.to_json());
    CHECK(back.to_json() == cfg.to_json());
}

TEST_CASE("file plus overrides") {
    const std::string path = "test_config_tmp.json";
    {
        std::ofstream out(path);
        out << R"({"model": {"sigma": 0.2}, "numerics": {"mc": {"n_paths": 500}}})";
    }
    const RunConfig cfg = load_config(path, {"switch.gamma=-0.5", "contract.p=0.06"});
    std::remove(path.c_str());
    CHECK(cfg.sigma == 0.2);
    CHECK(cfg.mc.n_paths == 500);
    CHECK(cfg.gamma == -0.5);
    CHECK(cfg.p == 0.06);
    CHECK(cfg.mu == 0.075);  // untouched default
}

TEST_CASE("violations are reported with the offending constraint") {
    CHECK_THROWS_WITH_AS(load_config("", {"model.sigma=-0.5"}),
                         doctest::Contains("sigma"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(load_config("", {"contract.r=0"}),
                         doctest::Contains("r must be > 0"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(load_config("", {"switch.gamma=1"}),
                         doctest::Contains("gamma"), std::invalid_argument);
    CHECK_THROWS_AS(load_config("", {"numerics.grid_n=1"}), std::invalid_argument);
    CHECK_THROWS_AS(load_config("", {"bogus"}), std::invalid_argument);
    CHECK_THROWS_AS(load_config("missing_file.json", {}), std::invalid_argument);
}
