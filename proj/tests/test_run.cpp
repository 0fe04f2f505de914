#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "wmlab/run.hpp"

using namespace wmlab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("wmlab_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool has_error(const std::vector<std::string>& errs, const std::string& field) {
    for (const auto& e : errs)
        if (e.rfind(field + ":", 0) == 0) return true;
    return false;
}

int run_cli(const std::string& args) {
    const int status = std::system((std::string(WMLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("criteria lists") {
    CHECK(parse_criteria("1-11") == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    CHECK(parse_criteria("3") == std::vector<int>{3});
    CHECK(parse_criteria("9,1,4,7-9") == std::vector<int>{1, 4, 7, 8, 9});
    for (const char* bad : {"", "0", "12", "3-1", "a", "1,,2", "1-"}) CHECK_THROWS(parse_criteria(bad));
    CHECK(criterion_name(1) == "profile correctness");
    CHECK_THROWS(run_criterion(11, {}));
}

TEST_CASE("determinism comparison") {
    const std::vector<std::pair<std::string, std::string>> a{{"x.csv", "1,2\n"}, {"y.csv", "3\n"}};
    auto b = a;
    CHECK(check_determinism(a, b).passed);
    b[1].second = "4\n";
    const CriterionResult r = check_determinism(a, b);
    CHECK_FALSE(r.passed);
    CHECK(r.detail.find("y.csv") != std::string::npos);
    b.pop_back();
    CHECK_FALSE(check_determinism(a, b).passed);
}

TEST_CASE("config validation reports fields") {
    CHECK(validate(RunConfig{}).empty());
    RunConfig c;
    c.command = "explode";
    c.dims = {4, 3, 3};
    c.n = 8;
    c.collocation_n = 16;
    c.cfl = -1;
    c.tau_max = 0;
    c.shape = "square";
    c.gauge = "sometimes";
    c.T0 = 1.0;
    c.delta = 2.0;
    c.region = "re>=0";
    c.criteria = "0-3";
    c.execution = "gpu";
    const auto errs = validate(c);
    for (const char* f : {"command", "dims", "n", "collocation_n", "cfl", "tau_max", "shape", "gauge", "delta",
                          "region", "criteria", "execution"}) {
        CHECK_MESSAGE(has_error(errs, f), f);
    }
    CHECK_THROWS_AS(run(c), ConfigError);
}

TEST_CASE("config JSON round trip") {
    RunConfig c;
    c.command = "simulate";
    c.dims = {3, 7};
    c.amplitude = 2.5e-4;
    c.gauge = "project";
    c.nonlinear = false;
    c.seed = 123456789012345ULL;
    const RunConfig back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));
    CHECK(back.dims == c.dims);
    CHECK(back.seed == c.seed);

    const RunConfig partial = config_from_json(R"({"command": "norms", "dims": [5]})");
    CHECK(partial.command == "norms");
    CHECK(partial.n == RunConfig{}.n);

    try {
        config_from_json(R"({"dims": "three", "colour": 1, "n": 3.5})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(has_error(e.errors, "dims"));
        CHECK(has_error(e.errors, "colour"));
        CHECK(has_error(e.errors, "n"));
    }
    CHECK_THROWS_AS(config_from_json(R"({"dims": [3, 5.5]})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"seed": -1})"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{not json"), ConfigError);
    CHECK_THROWS_AS(config_from_json("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"schema_version": 99})"), ConfigError);
}

TEST_CASE("output root resolution") {
    RunConfig c;
    c.output_dir = "/tmp/x";
    CHECK(output_root(c) == fs::path("/tmp/x"));
    c.output_dir.clear();
    setenv("WMLAB_RUNS_DIR", "/tmp/from_env", 1);
    CHECK(output_root(c) == fs::path("/tmp/from_env"));
    unsetenv("WMLAB_RUNS_DIR");
    CHECK(output_root(c) == fs::path("runs"));
}

TEST_CASE("norms run writes a complete record") {
    const fs::path root = fresh_dir("norms");
    RunConfig c;
    c.command = "norms";
    c.dims = {3, 5};
    c.output_dir = root.string();
    const RunRecord r1 = run(c);
    CHECK(r1.ok);
    CHECK(r1.checks.size() == 2);
    for (const char* f : {"config.json", "summary.json", "run_record.json", "exponents_d3.csv", "exponents_d5.csv"}) {
        CHECK_MESSAGE(fs::exists(r1.directory / f), f);
    }
    const std::string csv = slurp(r1.directory / "exponents_d3.csv");
    CHECK(csv.rfind("component,order,fitted,expected\n", 0) == 0);

    const auto summary = nlohmann::json::parse(slurp(r1.directory / "summary.json"));
    CHECK(summary["schema_version"] == kSchemaVersion);
    CHECK(summary["ok"] == true);
    CHECK_FALSE(summary.contains("started"));
    const auto record = nlohmann::json::parse(slurp(r1.directory / "run_record.json"));
    CHECK(record["artifact_version"] == kArtifactVersion);
    CHECK(record["files"].size() == r1.files.size());
    CHECK(config_to_json(config_from_json(record["config"].dump())) == config_to_json(c));
    CHECK(slurp(r1.directory / "config.json") == config_to_json(c));

    // a second run in the same second gets its own directory
    const RunRecord r2 = run(c);
    CHECK(r2.directory != r1.directory);
    CHECK(fs::exists(r1.directory / "summary.json"));
    const auto o1 = deterministic_outputs(r1.directory), o2 = deterministic_outputs(r2.directory);
    CHECK(o1 == o2);
    for (const auto& [name, bytes] : o1) CHECK(name != "run_record.json");
}

TEST_CASE("simulate with zero amplitude is flat") {
    const fs::path root = fresh_dir("flat");
    RunConfig c;
    c.command = "simulate";
    c.dims = {3};
    c.amplitude = 0.0;
    c.tau_max = 1.0;
    c.output_dir = root.string();
    const RunRecord r = run(c);
    CHECK(r.ok);
    const auto summary = nlohmann::json::parse(slurp(r.directory / "summary.json"));
    const auto& s = summary["runs"][0];
    CHECK(s["T"] == 1.0);
    CHECK(s["decay_fit"]["defined"] == false);
    CHECK(s["decay_fit"]["rate"].is_null());
    CHECK(s["diverged"] == false);
    std::istringstream csv(slurp(r.directory / "trajectory_d3.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line.rfind("tau,H,", 0) == 0);
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        CHECK(line.find(",0,") != std::string::npos);
    }
    CHECK(rows == 11);
}

TEST_CASE("failed sub-runs are recorded without stopping the run") {
    const fs::path root = fresh_dir("partial");
    RunConfig c;
    c.command = "simulate";
    c.dims = {3, 5};
    c.gauge = "none";
    c.select_T = false;
    c.amplitude = 1e-2;
    c.tau_max = 16.0;
    c.output_dir = root.string();
    const RunRecord r = run(c);
    CHECK(r.ok);
    c.gauge = "project";
    c.delta = 0.9;
    c.T0 = 1.0;
    c.shape = "profile_shift";
    c.amplitude = 0.5;
    const RunRecord bad = run(c);
    CHECK(fs::exists(bad.directory / "summary.json"));
    CHECK(fs::exists(bad.directory / "run_record.json"));
    CHECK(bad.checks.size() == 2);
}

TEST_CASE("command line exit codes") {
    const fs::path root = fresh_dir("cli");
    const std::string out = " --out " + root.string();
    CHECK(run_cli("norms --d 3" + out) == 0);
    CHECK(run_cli("norms --d 4" + out) == 2);
    CHECK(run_cli("simulate --gauge maybe" + out) == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("") == 2);
    std::ofstream(root / "cfg.json") << R"({"command": "norms", "dims": [5], "n": 24})";
    CHECK(run_cli("norms --config " + (root / "cfg.json").string() + " --d 3" + out) == 0);
    std::ofstream(root / "bad.json") << R"({"dims": [5], "typo": 1})";
    CHECK(run_cli("norms --config " + (root / "bad.json").string() + out) == 2);
    // a gauged run that still diverges counts as a failed run
    CHECK(run_cli("simulate --d 3 --gauge project --no-select-T --amplitude 5 "
                  "--tau-max 16" + out) == 1);
}
