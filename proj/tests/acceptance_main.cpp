// Runs the embedded verification catalog and prints one line per criterion.
#include <cstdio>

#include "bvpindex/acceptance.hpp"

int main() {
    bool all_ok = true;
    for (const auto& r : bvpindex::acceptance::run_all()) {
        std::printf("%-4s %-24s %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                    r.name.c_str(), r.seconds);
        if (!r.passed) {
            std::printf("     %s\n", r.detail.c_str());
            all_ok = false;
        }
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
