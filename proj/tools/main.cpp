#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bvpindex/acceptance.hpp"
#include "bvpindex/config.hpp"
#include "bvpindex/degree.hpp"
#include "bvpindex/report.hpp"

namespace {

using namespace bvpindex;

int emit(const report::AnalysisOutcome& outcome, const std::string& out_path) {
    const std::string text = outcome.report.to_string();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write to '" << out_path << "'\n";
            return 1;
        }
        out << text;
    }
    return outcome.exit_code;
}

degree::FiniteMap builtin_map(const std::string& name) {
    using linalg::Vector;
    if (name == "identity")
        return {2, [](const Vector& u) { return u; }, 1.0, true};
    if (name == "neg-identity")
        return {2, [](const Vector& u) { return Vector(-u); }, 1.0, true};
    if (name == "neg-identity-3d")
        return {3, [](const Vector& u) { return Vector(-u); }, 1.0, true};
    if (name == "cubic-1d")
        return {1,
                [](const Vector& u) {
                    Vector r(1);
                    r << u(0) * u(0) * u(0);
                    return r;
                },
                3.0, true};
    if (name == "neg-1d")
        return {1, [](const Vector& u) { return Vector(-u); }, 1.0, true};
    if (name == "complex-square" || name == "complex-cube") {
        const int k = name == "complex-square" ? 2 : 3;
        return {2,
                [k](const Vector& u) {
                    std::complex<double> z(u(0), u(1)), w(1.0, 0.0);
                    for (int i = 0; i < k; ++i) w *= z;
                    Vector r(2);
                    r << w.real(), w.imag();
                    return r;
                },
                double(k), k % 2 == 1};
    }
    throw Error("unknown builtin map '" + name +
                "' (try: identity, neg-identity, neg-identity-3d, complex-square, "
                "complex-cube, cubic-1d, neg-1d)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topological index analysis for discretized two-point boundary problems"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    auto* analyze = app.add_subcommand("analyze", "run the verdict pipeline on a config");
    analyze->add_option("config", config_path, "JSON config file")->required();
    analyze->add_option("--out", out_path, "write the report to a file instead of stdout");

    std::string spectrum_path, spectrum_out;
    auto* spectrum = app.add_subcommand("spectrum", "report the pencil spectral tables only");
    spectrum->add_option("config", spectrum_path, "JSON config file")->required();
    spectrum->add_option("--out", spectrum_out, "write the report to a file instead of stdout");

    std::string map_name;
    double radius = 1.0;
    auto* demo = app.add_subcommand("degree-demo", "degree of a builtin map");
    demo->add_option("name", map_name, "builtin map name")->required();
    demo->add_option("--radius", radius, "ball radius (default 1)");

    bool list_only = false, corrupt = false;
    auto* selftest = app.add_subcommand("selftest", "run the embedded verification catalog");
    selftest->add_flag("--list", list_only, "print catalog ids and exit");
    selftest->add_flag("--corrupt-tolerance", corrupt,
                       "test hook: corrupt the spectral tolerance to force a failure");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return emit(report::analyze(config::parse_config_file(config_path)), out_path);
        if (*spectrum)
            return emit(report::spectrum(config::parse_config_file(spectrum_path)), spectrum_out);
        if (*demo) {
            const auto map = builtin_map(map_name);
            int value = 0;
            if (map.dim == 1) value = degree::degree_1d(map, radius);
            else if (map.dim == 2) value = degree::degree_2d_winding(map, radius);
            else value = degree::degree_nd_regular(map, radius).value;
            std::cout << value << "\n";
            return 0;
        }
        if (*selftest) {
            if (list_only) {
                for (const auto& [id, name] : acceptance::catalog())
                    std::cout << id << "  (" << name << ")\n";
                return 0;
            }
            acceptance::Options opt;
            opt.corrupt_tolerance = corrupt;
            bool all_ok = true;
            for (const auto& r : acceptance::run_all(opt)) {
                std::printf("%-4s %-24s %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                            r.name.c_str(), r.seconds);
                if (!r.passed) {
                    std::printf("     %s\n", r.detail.c_str());
                    all_ok = false;
                }
            }
            return all_ok ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
