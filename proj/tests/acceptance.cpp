// Acceptance gate: every criterion at its stated tolerance, one PASS/FAIL line each.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "wmlab/run.hpp"
#include "wmlab/verification.hpp"

using namespace wmlab;
namespace fs = std::filesystem;

namespace {

void report(int id, const CriterionResult& r) {
    std::printf("%s %2d %s: %s (%.1fs)\n", r.passed ? "PASS" : "FAIL", id, criterion_name(id).c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
}

// Runs the identical command line twice into one root and returns both run directories.
std::vector<fs::path> cli_repeats(const fs::path& root, std::uint64_t seed) {
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string cmd = std::string(WMLAB_CLI_PATH) + " verify-all --criteria 1-10 --seed " +
                            std::to_string(seed) + " --out " + root.string() + " > /dev/null 2>&1";
    for (int i = 0; i < 2; ++i)
        if (std::system(cmd.c_str()) == -1) throw std::runtime_error("could not launch " + std::string(WMLAB_CLI_PATH));
    std::vector<fs::path> dirs;
    for (const auto& e : fs::directory_iterator(root))
        if (e.is_directory()) dirs.push_back(e.path());
    if (dirs.size() != 2) throw std::runtime_error("expected two run directories under " + root.string());
    return dirs;
}

}  // namespace

int main() {
    const VerifyOptions opt;
    int failures = 0;
    for (int id = 1; id <= 10; ++id) {
        CriterionResult r;
        try {
            r = run_criterion(id, opt);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("threw: ") + e.what();
        }
        report(id, r);
        failures += !r.passed;
    }

    CriterionResult det;
    det.name = criterion_name(11);
    try {
        const auto dirs = cli_repeats(fs::temp_directory_path() / "wmlab_acceptance", opt.seed);
        const auto a = deterministic_outputs(dirs[0]);
        const auto b = deterministic_outputs(dirs[1]);
        det = check_determinism(a, b);
        if (a.size() < 3) {
            det.passed = false;
            det.detail = "too few outputs to compare (" + std::to_string(a.size()) + ")";
        }
    } catch (const std::exception& e) {
        det.passed = false;
        det.detail = std::string("threw: ") + e.what();
    }
    report(11, det);
    failures += !det.passed;

    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
