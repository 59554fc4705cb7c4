#include <doctest.h>

#include "pvfreq/cli.hpp"
#include "pvfreq/scenario_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace pvfreq;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "pvfreq");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "pvfreq_cli_test";
    fs::create_directories(dir);
    return dir;
}

const std::string kScenarios = PVFREQ_SCENARIO_DIR;

} // namespace

TEST_CASE("simulate writes trace and metrics") {
    const fs::path dir = scratch_dir();
    const auto trace = (dir / "trace.csv").string();
    const auto metrics = (dir / "metrics.csv").string();
    const Result r = run({"simulate", "--preset", "ei80", "--controller", "droop", "--out", trace,
                          "--metrics", metrics});
    CHECK(r.code == kExitOk);
    const std::string t = slurp(trace);
    CHECK(t.rfind(std::string(kTraceHeader) + "\n", 0) == 0);
    CHECK(t.size() > 6000 * 40);
    const std::string m = slurp(metrics);
    CHECK(m.rfind(std::string(kMetricsHeader) + "\nei80,droop,", 0) == 0);

    // Byte-identical on repeat.
    const auto trace2 = (dir / "trace2.csv").string();
    CHECK(run({"simulate", "--preset", "ei80", "--controller", "droop", "--out", trace2}).code ==
          kExitOk);
    CHECK(slurp(trace2) == t);
}

TEST_CASE("simulate from a document with overrides") {
    const Result r = run({"simulate", "--config", kScenarios + "/ei80_droop.json", "--set",
                          "sim.t_end=10", "--set", "system.h_sys=3.0"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("\n10.000000,") != std::string::npos);
}

TEST_CASE("unknown preset is a validation error") {
    const Result r = run({"simulate", "--preset", "wecc"});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("ei80") != std::string::npos);
    CHECK(r.err.find("ercot80") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run({"frobnicate"}).code == kExitValidation);
    CHECK(run({}).code == kExitValidation);
    CHECK(run({"simulate", "--bogus"}).code == kExitValidation);
    CHECK(run({"--help"}).code == kExitOk);
    CHECK(run({"sweep", "--preset", "ei80", "--param", "nonexistent", "--values", "1"}).code ==
          kExitValidation);
    CHECK(run({"simulate", "--config", "/nonexistent/file.json"}).code == kExitValidation);
}

TEST_CASE("compare prints four rows in controller order") {
    const Result r = run({"compare", "--preset", "ercot80"});
    CHECK(r.code == kExitOk);
    std::istringstream in(r.out);
    const auto rows = read_metrics_csv(in);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].controller == ControllerKind::none);
    CHECK(rows[3].controller == ControllerKind::combined);
    CHECK(run({"compare", "--preset", "ercot80"}).out == r.out);
}

TEST_CASE("compliance exit codes") {
    const fs::path dir = scratch_dir();
    const auto report = (dir / "report.json").string();
    const Result ok = run({"compliance", "--config", kScenarios + "/ercot80_droop_compliant.json",
                           "--out", report});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out.find("overall: PASS") != std::string::npos);
    CHECK(slurp(report).find("\"pass\": true") != std::string::npos);

    const Result bad =
        run({"compliance", "--config", kScenarios + "/slow_droop_noncompliant.json"});
    CHECK(bad.code == kExitComplianceFail);
    CHECK(bad.out.find("rise_time") != std::string::npos);

    const Result none = run({"compliance", "--preset", "ei80", "--controller", "inertia"});
    CHECK(none.code == kExitComplianceFail);
    CHECK(none.out.find("NoResponse") != std::string::npos);

    CHECK(run({"compliance", "--preset", "ei80"}).code == kExitValidation);
}

TEST_CASE("headroom and sweep") {
    const Result h = run({"headroom", "--preset", "ercot80", "--controller", "combined",
                          "--target", "59.5"});
    CHECK(h.code == kExitOk);
    CHECK(h.out.find("minimum headroom") != std::string::npos);

    const Result u = run({"headroom", "--preset", "ercot80", "--target", "59.99"});
    CHECK(u.code == kExitRuntime);

    const Result s = run({"sweep", "--preset", "ei80", "--controller", "droop", "--param",
                          "system.h_sys", "--values", "2,3,4"});
    CHECK(s.code == kExitOk);
    CHECK(s.out.rfind(std::string(kSweepHeader) + "\nsystem.h_sys,2.000000,", 0) == 0);
}
