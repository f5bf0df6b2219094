#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gwco/complex_text.hpp"
#include "json.hpp"

namespace {

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Runs the CLI under test with `args` appended, capturing both streams.
RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string tag = std::to_string(getpid()) + "_" + std::to_string(counter++);
    const std::string out_path = "/tmp/gwco_test_out_" + tag;
    const std::string err_path = "/tmp/gwco_test_err_" + tag;
    const std::string cmd =
        std::string("\"") + GWCO_BIN + "\" " + args + " > " + out_path + " 2> " + err_path;
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::string strip_duration(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.find("duration") == std::string::npos) out << line << "\n";
    return out.str();
}

std::string write_temp_config(const std::string& body) {
    static int counter = 0;
    const std::string path = "/tmp/gwco_test_cfg_" + std::to_string(getpid()) + "_" +
                             std::to_string(counter++) + ".json";
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST_CASE("golden reports reproduce byte for byte") {
    const struct {
        const char* name;
        int expected_status;
    } cases[] = {
        {"case1_pass", 0},
        {"deriv_fail", 1},
        {"bergman_auto", 0},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        const std::string config = std::string(GOLDEN_DIR) + "/" + c.name + ".config.json";
        const std::string golden = std::string(GOLDEN_DIR) + "/" + c.name + ".report.json";
        const RunResult r = run_cli("verify --config \"" + config + "\"");
        CHECK(r.status == c.expected_status);
        CHECK(strip_duration(r.out) == slurp(golden));
    }
}

TEST_CASE("verify output is deterministic across runs") {
    const std::string args =
        "verify --space dirichlet --m 2 --w i --a0 0.2+0.1i --a1 0.3 --defects all "
        "--n 24 --format json";
    const RunResult r1 = run_cli(args);
    const RunResult r2 = run_cli(args);
    CHECK(r1.status == r2.status);
    CHECK(strip_duration(r1.out) == strip_duration(r2.out));
}

TEST_CASE("exit code contract") {
    // All clear.
    CHECK(run_cli("verify --space hardy --a0 0 --a1 0.5 --defects symmetry --n 16").status == 0);
    // A measured failure.
    const RunResult fail =
        run_cli("verify --space deriv_hardy --a0 0.3 --a1 0.3 --defects symmetry --n 24");
    CHECK(fail.status == 1);
    CHECK(fail.out.find("fail") != std::string::npos);
    // Rejected configuration, with the pinned diagnostic.
    const RunResult bad_w = run_cli("verify --space hardy --w 0.9 --a1 0.5");
    CHECK(bad_w.status == 2);
    CHECK(bad_w.err.find("w must be unimodular") != std::string::npos);
    // Evaluation-time domain error: phi pushes alpha outside the disc.
    const RunResult eval = run_cli(
        "verify --space hardy --m 0 --phi 0.9,0.5 --psi 1 --defects adjoint_kernel --n 24");
    CHECK(eval.status == 3);
    CHECK(eval.err.find("error:") != std::string::npos);
    // Unknown flag.
    CHECK(run_cli("verify --frequency 11").status == 2);
    // Help is a success.
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("verify --help").status == 0);
}

TEST_CASE("mutually exclusive symbol sources are rejected") {
    const RunResult r = run_cli("verify --space hardy --a0 0.2 --phi 0,0.5 --psi 1");
    CHECK(r.status == 2);
    CHECK(r.err.find("config error:") != std::string::npos);
}

TEST_CASE("config files accept the frozen key set and nothing else") {
    const std::string good = write_temp_config(R"({
      "space": "hardy", "n": 16, "m": 1, "w": "1",
      "a0": "0", "a1": "0.5", "defects": ["symmetry"], "format": "json"
    })");
    const RunResult ok = run_cli("verify --config " + good);
    CHECK(ok.status == 0);
    const auto doc = nlohmann::json::parse(ok.out);
    CHECK(doc.at("schema").get<std::string>() == "gwco-report-v1");
    CHECK(doc.at("verdict").get<std::string>() == "pass");
    std::remove(good.c_str());

    const std::string bad = write_temp_config(R"({"space": "hardy", "a1": "0.5", "flavour": 3})");
    const RunResult rejected = run_cli("verify --config " + bad);
    CHECK(rejected.status == 2);
    CHECK(rejected.err.find("flavour") != std::string::npos);
    std::remove(bad.c_str());
}

TEST_CASE("flags override config file values") {
    const std::string path = write_temp_config(R"({
      "space": "deriv_hardy", "n": 24, "a0": "0.3", "a1": "0.3", "defects": ["symmetry"]
    })");
    // As written the file fails; overriding a1 to zero lands on the clean branch.
    CHECK(run_cli("verify --config " + path).status == 1);
    const RunResult overridden = run_cli("verify --config " + path + " --a1 0 --format json");
    CHECK(overridden.status == 0);
    const auto doc = nlohmann::json::parse(overridden.out);
    CHECK(doc.at("config").at("a1").get<std::string>() == "0");
    CHECK(doc.at("config").at("space").get<std::string>() == "deriv_hardy");
    std::remove(path.c_str());
}

TEST_CASE("complex literals round trip through the report") {
    const RunResult r = run_cli(
        "verify --space hardy --a0 0.2 --a1 0 --w exp:0.5 --defects symmetry --n 16 --format json");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const gwco::cplx w = gwco::parse_complex(doc.at("config").at("w").get<std::string>());
    CHECK(w == std::polar(1.0, 0.5));
}

TEST_CASE("scan emits an indexed table in text and an array in json") {
    const std::string common =
        "scan --space hardy --a0 0.2 --a1 0 --defects symmetry --n 16 --axis w "
        "--values 1,i,-1,-i";
    const RunResult text = run_cli(common);
    CHECK(text.status == 0);
    CHECK(text.out.find("scan axis=w  points=4  valid=4") != std::string::npos);
    CHECK(text.out.find("idx") != std::string::npos);

    const RunResult json = run_cli(common + " --format json --jobs 3");
    CHECK(json.status == 0);
    const auto doc = nlohmann::json::parse(json.out);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 5); // four points plus the trailing summary
    for (size_t i = 0; i < 4; ++i)
        CHECK(doc[i].at("schema").get<std::string>() == "gwco-report-v1");
    const auto& summary = doc[4];
    CHECK(summary.at("schema").get<std::string>() == "gwco-scan-summary-v1");
    CHECK(summary.at("points").get<int>() == 4);
    CHECK(summary.at("valid").get<int>() == 4);
    CHECK(summary.at("verdict").get<std::string>() == "pass");
}

TEST_CASE("scan with an invalid point keeps going and exits one") {
    const RunResult r = run_cli(
        "scan --space hardy --a1 0 --defects symmetry --n 16 --axis a0 "
        "--values 0.1,2.0,0.2 --format json");
    CHECK(r.status == 1);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.size() == 4);
    CHECK(doc[1].at("verdict").get<std::string>() == "invalid");
    CHECK(doc[1].at("error").get<std::string>().find("a0") != std::string::npos);
    CHECK(doc[3].at("schema").get<std::string>() == "gwco-scan-summary-v1");
    CHECK(doc[3].at("valid").get<int>() == 2);
}

TEST_CASE("empty scan value lists are allowed") {
    const RunResult r =
        run_cli("scan --space hardy --a1 0.5 --axis a0 --values \"\" --format json");
    CHECK(r.status == 0);
    CHECK(r.out == "[]\n");
}

TEST_CASE("scan requires an axis") {
    const RunResult r = run_cli("scan --space hardy --a1 0.5 --values 0.1,0.2");
    CHECK(r.status == 2);
}

TEST_CASE("weights subcommand prints tables and machine output") {
    const RunResult text = run_cli("weights --space bergman --n 4");
    CHECK(text.status == 0);
    CHECK(text.out.find("space: bergman  N=4") != std::string::npos);
    CHECK(text.out.find("0.7071067811865475") != std::string::npos);

    const RunResult json = run_cli("weights --space dirichlet --n 9 --format json");
    CHECK(json.status == 0);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc.at("schema").get<std::string>() == "gwco-weights-v1");
    CHECK(doc.at("space").get<std::string>() == "dirichlet");
    REQUIRE(doc.at("beta").size() == 10);
    CHECK(doc.at("beta")[4].get<double>() == 2.0);
    CHECK(doc.at("beta")[9].get<double>() == 3.0);

    CHECK(run_cli("weights --space szego").status == 2);

    const RunResult custom =
        run_cli("weights --space custom --custom-betas 1,2,4,8 --n 3 --format json");
    CHECK(custom.status == 0);
    CHECK(nlohmann::json::parse(custom.out).at("beta")[3].get<double>() == 8.0);
}
