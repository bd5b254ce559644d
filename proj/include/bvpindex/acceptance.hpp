#pragma once

#include <string>
#include <vector>

namespace bvpindex::acceptance {

struct CriterionResult {
    std::string id;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    bool corrupt_tolerance = false;  // test hook: breaks the spectral tolerance
};

const std::vector<std::pair<std::string, std::string>>& catalog();  // (id, name)

CriterionResult run_one(const std::string& id, const Options& opt = {});

std::vector<CriterionResult> run_all(const Options& opt = {});

}  // namespace bvpindex::acceptance
