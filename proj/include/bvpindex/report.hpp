#pragma once

#include <string>

#include <json.hpp>

#include "bvpindex/config.hpp"

namespace bvpindex::report {

/// Full analysis output.  The `machine` section is a deterministic function of
/// the config (and its seed); timings live outside it.
struct Report {
    nlohmann::json machine;
    nlohmann::json timings;

    std::string to_string() const;
    std::string machine_string() const;
};

struct AnalysisOutcome {
    Report report;
    int exit_code = 0;  // 0: ran, 2: hypothesis refusal
};

AnalysisOutcome analyze(const config::ConfigDocument& cfg);

/// The spectral tables only (no verdicts, no oracle).
AnalysisOutcome spectrum(const config::ConfigDocument& cfg);

}  // namespace bvpindex::report
