#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bvpindex/fem.hpp"

namespace bvpindex::config {

inline constexpr const char* kToolVersion = "0.1.0";

enum class OracleMethod { shooting, newton, both };

std::string to_string(OracleMethod m);

struct OracleOptions {
    OracleMethod method = OracleMethod::both;
    double s_lo = -20.0, s_hi = 20.0;
    int starts = 8;
    unsigned seed = 1234;
};

struct AnalysisOptions {
    bool auto_theorems = true;
    std::vector<std::string> theorems;
    double tolerance = 1e-8;
    bool verify_with_oracle = false;
    OracleOptions oracle;
};

struct ConfigDocument {
    fem::ProblemSpec problem;
    AnalysisOptions analysis;
    nlohmann::json normalized;  // canonical echo of the accepted document
};

/// Strict parse: unknown keys are rejected with a JSON-pointer path, all
/// expressions must parse, and declared homogeneity orders/parities are
/// validated before any analysis runs.
ConfigDocument parse_config(const nlohmann::json& doc);
ConfigDocument parse_config_text(const std::string& text);
ConfigDocument parse_config_file(const std::string& path);

}  // namespace bvpindex::config
