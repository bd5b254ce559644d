#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(BVPINDEX_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_config(const std::string& name, const std::string& text) {
    const std::string path = std::string(BVPINDEX_TEST_TMPDIR) + "/" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

const char* kParityConfig = R"json({
  "problem": {
    "p": "1",
    "g": "-5*t - 10*t^3/(1+t^2)",
    "gprime0": "-5",
    "gprimeInf": "-15"
  },
  "mesh": {"n_elements": 100},
  "analysis": {
    "theorems": ["nontrivial_parity"],
    "verify_with_oracle": true,
    "oracle": {"method": "shooting", "s_range": [-20, 20], "starts": 4, "seed": 11}
  }
})json";

}  // namespace

TEST_CASE("analyze runs the parity pipeline end to end") {
    const auto path = write_config("parity.json", kParityConfig);
    const auto r = run_cli("analyze " + path);
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const auto& machine = doc.at("machine");
    CHECK(machine.at("version") == "0.1.0");
    const auto& verdicts = machine.at("verdicts");
    REQUIRE(verdicts.size() == 1);
    CHECK(verdicts[0].at("id") == "nontrivial_parity");
    CHECK(verdicts[0].at("conclusion") == "nontrivial_solution_exists");
    CHECK(verdicts[0].at("zero_pencil").at("nu") == 0);
    CHECK(verdicts[0].at("infinity_pencil").at("nu") == 1);
    // the oracle must confirm the conclusion
    const auto& agreement = machine.at("oracle").at("agreement");
    REQUIRE(agreement.size() == 1);
    CHECK(agreement[0].at("oracle_confirms") == true);
    CHECK(doc.contains("timings"));
}

TEST_CASE("machine report sections are byte-identical across runs") {
    const auto path = write_config("parity2.json", kParityConfig);
    const auto r1 = run_cli("analyze " + path);
    const auto r2 = run_cli("analyze " + path);
    REQUIRE(r1.exit_code == 0);
    const auto m1 = nlohmann::json::parse(r1.out).at("machine").dump();
    const auto m2 = nlohmann::json::parse(r2.out).at("machine").dump();
    CHECK(m1 == m2);
}

TEST_CASE("spectrum emits the tables without verdicts") {
    const auto path = write_config("spec.json", kParityConfig);
    const auto r = run_cli("spectrum " + path);
    REQUIRE(r.exit_code == 0);
    const auto machine = nlohmann::json::parse(r.out).at("machine");
    CHECK(machine.contains("pencils"));
    CHECK_FALSE(machine.contains("verdicts"));
    CHECK(machine.at("pencils").at("zero").at("nu") == 0);
    CHECK(machine.at("pencils").at("infinity").at("nu") == 1);
}

TEST_CASE("spectrum reports the aligned kernel of a resonant side") {
    const auto path = write_config("resonant_spec.json", R"json({
      "problem": {
        "p": "1",
        "g": "-pi^2*t + sign(t)*abs(t)^0.5",
        "gprimeInf": "-pi^2",
        "resonant_at_infinity": true
      },
      "mesh": {"n_elements": 100}
    })json");
    const auto r = run_cli("spectrum " + path);
    REQUIRE(r.exit_code == 0);
    const auto table = nlohmann::json::parse(r.out).at("machine").at("pencils").at("infinity");
    CHECK(table.at("aligned") == true);
    CHECK(table.at("l") == 1);
    CHECK(table.at("n0") == 1);
}

TEST_CASE("exit codes follow the contract") {
    // invalid config -> 1
    const auto bad = write_config("bad.json", R"json({"problem": {}, "mesh": {"n_elements": 4}})json");
    const auto rbad = run_cli("analyze " + bad);
    CHECK(rbad.exit_code == 1);
    CHECK(rbad.out.find("/mesh/n_elements") != std::string::npos);

    // explicitly requested verdict whose guard fails -> 2
    const auto refuse = write_config("refuse.json", R"json({
      "problem": {"p": "1", "g": "-5*t", "gprime0": "-5", "gprimeInf": "-5"},
      "mesh": {"n_elements": 64},
      "analysis": {"theorems": ["solv_resonant"]}
    })json");
    const auto rref = run_cli("analyze " + refuse);
    CHECK(rref.exit_code == 2);
}

TEST_CASE("degree demo prints integers") {
    CHECK(run_cli("degree-demo identity").out == "1\n");
    CHECK(run_cli("degree-demo complex-square").out == "2\n");
    CHECK(run_cli("degree-demo complex-cube --radius 0.5").out == "3\n");
    CHECK(run_cli("degree-demo neg-identity-3d").out == "-1\n");
    const auto r = run_cli("degree-demo unknown-map");
    CHECK(r.exit_code == 1);
}

TEST_CASE("analyze writes to --out") {
    const auto path = write_config("parity3.json", kParityConfig);
    const auto out_path = std::string(BVPINDEX_TEST_TMPDIR) + "/report.json";
    const auto r = run_cli("analyze " + path + " --out " + out_path);
    REQUIRE(r.exit_code == 0);
    std::ifstream in(out_path);
    REQUIRE(in.good());
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc.at("machine").at("verdicts").size() == 1);
}

TEST_CASE("auto mode with no runnable verdict exits with the refusal code") {
    const auto path = write_config("nothing.json", R"json({
      "problem": {"p": "1", "g": "x + t"},
      "mesh": {"n_elements": 16}
    })json");
    const auto r = run_cli("analyze " + path);
    CHECK(r.exit_code == 2);
}

TEST_CASE("corrupted tolerance hook produces a named selftest failure") {
    const auto r = run_cli("selftest --corrupt-tolerance");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL discrete-spectrum") != std::string::npos);
}

TEST_CASE("selftest lists the catalog") {
    const auto r = run_cli("selftest --list");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("degree-axioms") != std::string::npos);
    CHECK(r.out.find("determinism") != std::string::npos);
    int lines = 0;
    for (const char ch : r.out)
        if (ch == '\n') ++lines;
    CHECK(lines == 10);
}
