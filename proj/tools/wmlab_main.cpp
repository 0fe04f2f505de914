#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "wmlab/run.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw wmlab::ConfigError({"config: cannot read " + path});
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for self-similar wave maps blowup"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", wmlab::kArtifactVersion);

    wmlab::RunConfig flags;
    std::string config_path;
    bool linear = false;
    bool no_select = false;

    app.add_option("--config", config_path, "JSON config file; explicit flags override it")->check(CLI::ExistingFile);
    std::vector<CLI::Option*> overrides;
    auto add = [&](const std::string& name, auto& field, const std::string& help) {
        CLI::Option* o = app.add_option(name, field, help);
        overrides.push_back(o);
        return o;
    };
    add("--d", flags.dims, "odd dimensions >= 3, e.g. --d 3,5,7")->delimiter(',');
    add("--n", flags.n, "evolution grid size");
    add("--collocation-n", flags.collocation_n, "collocation grid size");
    add("--dtau", flags.dtau, "time step (0 selects cfl/n^2)");
    add("--cfl", flags.cfl, "time step factor");
    add("--tau-max", flags.tau_max, "final self-similar time");
    add("--shape", flags.shape, "gaussian | cubic | profile_shift");
    add("--amplitude", flags.amplitude, "perturbation amplitude");
    add("--gauge", flags.gauge, "none | project | adjust_T");
    add("--T0", flags.T0, "reference blowup time");
    add("--delta", flags.delta, "half-width of the blowup time bracket");
    add("--region", flags.region, "eigenvalue search region, e.g. re>=0,abs<=15");
    add("--criteria", flags.criteria, "criteria ids, e.g. 1-11 or 1,4,7-9");
    add("--out", flags.output_dir, "output root (default $WMLAB_RUNS_DIR or ./runs)");
    add("--seed", flags.seed, "random seed");
    add("--execution", flags.execution, "serial | parallel");
    CLI::Option* linear_opt = app.add_flag("--linear", linear, "evolve the linearized equation");
    CLI::Option* no_select_opt = app.add_flag("--no-select-T", no_select, "skip blowup time selection");

    const std::map<std::string, std::string> about{
        {"simulate", "evolve perturbations of the self-similar profile"},
        {"spectrum", "locate eigenvalues of the linearized operator"},
        {"appendix", "log coefficients, SUSY residuals and the J_m identity"},
        {"norms", "scaling exponents of profile norms"},
        {"verify-all", "run the acceptance criteria"}};
    for (const auto& name : wmlab::run_commands()) app.add_subcommand(name, about.count(name) ? about.at(name) : "");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        wmlab::RunConfig cfg = config_path.empty() ? wmlab::RunConfig{} : wmlab::config_from_json(read_file(config_path));
        cfg.command = app.get_subcommands().front()->get_name();
        const wmlab::RunConfig given = flags;
        for (CLI::Option* o : overrides) {
            if (o->count() == 0) continue;
            const std::string n = o->get_name();
            if (n == "--d") cfg.dims = given.dims;
            else if (n == "--n") cfg.n = given.n;
            else if (n == "--collocation-n") cfg.collocation_n = given.collocation_n;
            else if (n == "--dtau") cfg.dtau = given.dtau;
            else if (n == "--cfl") cfg.cfl = given.cfl;
            else if (n == "--tau-max") cfg.tau_max = given.tau_max;
            else if (n == "--shape") cfg.shape = given.shape;
            else if (n == "--amplitude") cfg.amplitude = given.amplitude;
            else if (n == "--gauge") cfg.gauge = given.gauge;
            else if (n == "--T0") cfg.T0 = given.T0;
            else if (n == "--delta") cfg.delta = given.delta;
            else if (n == "--region") cfg.region = given.region;
            else if (n == "--criteria") cfg.criteria = given.criteria;
            else if (n == "--out") cfg.output_dir = given.output_dir;
            else if (n == "--seed") cfg.seed = given.seed;
            else if (n == "--execution") cfg.execution = given.execution;
        }
        if (linear_opt->count()) cfg.nonlinear = false;
        if (no_select_opt->count()) cfg.select_T = false;

        const wmlab::RunRecord rec = wmlab::run(cfg);
        for (const auto& c : rec.checks) {
            std::printf("%s %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        }
        for (const auto& e : rec.errors) std::fprintf(stderr, "error: %s\n", e.c_str());
        std::printf("output: %s\n", rec.directory.string().c_str());
        return rec.ok ? 0 : kExitFailed;
    } catch (const wmlab::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}
