#include <doctest.h>

#include "bvpindex/config.hpp"

using namespace bvpindex;

TEST_CASE("config validation") {
    SUBCASE("a full valid document parses") {
        const char* text = R"json({
          "problem": {
            "p": "1",
            "g": "-5*t - 10*t^3/(1+t^2)",
            "gprime0": "-5",
            "gprimeInf": "-15",
            "gk": {"expr": "sign(t)*abs(t)^0.5", "order": 0.5, "parity": "odd"},
            "resonant_at_infinity": false
          },
          "mesh": {"n_elements": 100},
          "analysis": {
            "theorems": ["nontrivial_parity"],
            "tolerance": 1e-8,
            "verify_with_oracle": true,
            "oracle": {"method": "both", "s_range": [-20, 20], "starts": 8, "seed": 1}
          }
        })json";
        const auto cfg = config::parse_config_text(text);
        CHECK(cfg.problem.n_elements == 100);
        CHECK(cfg.analysis.theorems.size() == 1);
        CHECK(cfg.analysis.verify_with_oracle);
        CHECK(cfg.analysis.oracle.seed == 1);
    }

    SUBCASE("coarse meshes are rejected with a pointer") {
        const char* text = R"json({"problem": {"g": "-5*t"}, "mesh": {"n_elements": 4}})json";
        try {
            config::parse_config_text(text);
            FAIL("expected a config error");
        } catch (const ConfigError& e) {
            CHECK(e.pointer() == "/mesh/n_elements");
        }
    }

    SUBCASE("unknown keys are rejected") {
        CHECK_THROWS_AS(config::parse_config_text(
                            R"json({"problem": {"g": "-5*t"}, "mesh": {"n_elements": 16}, "plot": 1})json"),
                        ConfigError);
        CHECK_THROWS_AS(
            config::parse_config_text(
                R"json({"problem": {"g": "-5*t", "gg": "1"}, "mesh": {"n_elements": 16}})json"),
            ConfigError);
        CHECK_THROWS_AS(config::parse_config_text(R"json({
              "problem": {"g": "-5*t"}, "mesh": {"n_elements": 16},
              "analysis": {"oracle": {"methodd": "both"}}})json"),
                        ConfigError);
    }

    SUBCASE("expression errors carry the config pointer") {
        try {
            config::parse_config_text(
                R"json({"problem": {"g": "t + * 2"}, "mesh": {"n_elements": 16}})json");
            FAIL("expected a config error");
        } catch (const ConfigError& e) {
            CHECK(e.pointer() == "/problem/g");
        }
    }

    SUBCASE("principal-part declarations are validated up front") {
        // wrong order range for a zero-side part
        CHECK_THROWS_AS(config::parse_config_text(R"json({
              "problem": {"g": "-5*t", "gl": {"expr": "t^2", "order": 0.5, "parity": "even"}},
              "mesh": {"n_elements": 16}})json"),
                        ConfigError);
        // numerically false homogeneity declaration
        CHECK_THROWS_AS(config::parse_config_text(R"json({
              "problem": {"g": "-5*t", "gl": {"expr": "t^2 + t", "order": 2, "parity": "even"}},
              "mesh": {"n_elements": 16}})json"),
                        ConfigError);
    }

    SUBCASE("unknown verdict ids are rejected") {
        CHECK_THROWS_AS(config::parse_config_text(R"json({
              "problem": {"g": "-5*t"}, "mesh": {"n_elements": 16},
              "analysis": {"theorems": ["solve_everything"]}})json"),
                        ConfigError);
    }

    SUBCASE("oracle range must be ordered") {
        CHECK_THROWS_AS(config::parse_config_text(R"json({
              "problem": {"g": "-5*t"}, "mesh": {"n_elements": 16},
              "analysis": {"oracle": {"s_range": [20, -20]}}})json"),
                        ConfigError);
    }
}
