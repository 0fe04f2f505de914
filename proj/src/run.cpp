#include "wmlab/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <type_traits>

#include "json.hpp"
#include "wmlab/appendix.hpp"
#include "wmlab/evolution.hpp"
#include "wmlab/spectrum.hpp"

namespace wmlab {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string utc_now(const char* format) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[64];
    std::strftime(buf, sizeof buf, format, &tm);
    return buf;
}

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json fit_json(const DecayFit& f) {
    return {{"defined", f.defined}, {"rate", num(f.rate)}, {"intercept", num(f.intercept)},
            {"residual", num(f.residual)}};
}

// All files of one run go through this writer.
class RunWriter {
public:
    explicit RunWriter(fs::path dir) : dir_(std::move(dir)) {}

    void text(const std::string& name, const std::string& content) {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
        out << content;
        files_.push_back(name);
    }

    void json_file(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }

    void csv(const std::string& name, const std::vector<std::string>& header,
             const std::vector<std::vector<double>>& rows) {
        std::string s;
        for (size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
        s += "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + number(row[i]);
            s += "\n";
        }
        text(name, s);
    }

    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

fs::path make_run_directory(const fs::path& root, const std::string& command) {
    fs::create_directories(root);
    const std::string stem = utc_now("%Y%m%dT%H%M%SZ") + "-" + command;
    fs::path dir = root / stem;
    for (int k = 2; fs::exists(dir); ++k) dir = root / (stem + "-" + std::to_string(k));
    fs::create_directory(dir);
    return dir;
}

Execution execution_of(const RunConfig& cfg) {
    return cfg.execution == "serial" ? Execution::serial : Execution::parallel;
}

EvolutionConfig evolution_config(const RunConfig& cfg, int d) {
    EvolutionConfig e;
    e.d = d;
    e.n = cfg.n;
    e.dtau = cfg.dtau;
    e.cfl = cfg.cfl;
    e.tau_max = cfg.tau_max;
    e.nonlinear = cfg.nonlinear;
    e.gauge = gauge_handling_from_string(cfg.gauge);
    e.delta = cfg.delta;
    e.exec = execution_of(cfg);
    return e;
}

struct CommandOutput {
    json summary = json::object();
    std::vector<CheckOutcome> checks;
    std::vector<std::string> errors;
};

void simulate(const RunConfig& cfg, RunWriter& w, CommandOutput& out) {
    json per_d = json::array();
    for (int d : cfg.dims) {
        const Dimension dim(d);
        json s = {{"d", d}};
        try {
            const EvolutionConfig ecfg = evolution_config(cfg, d);
            const DataPair v = perturbation_data(cfg.shape, cfg.amplitude, cfg.T0, dim);
            const ConeFrame frame = make_frame(cfg.T0, cfg.T0, cfg.delta);
            double T = cfg.T0;
            if (cfg.amplitude == 0.0) {
                s["T_source"] = "zero data";
            } else if (ecfg.gauge == GaugeHandling::adjust_T && cfg.select_T) {
                const SelectTResult sel = select_T(v, frame, ecfg);
                T = sel.T;
                s["T_source"] = "select_T";
                s["select_T"] = {{"T", sel.T},
                                 {"functional", sel.functional},
                                 {"evaluations", sel.evaluations},
                                 {"functional_at_T0_minus_delta", sel.f_low},
                                 {"functional_at_T0_plus_delta", sel.f_high}};
            } else {
                s["T_source"] = "T0";
            }
            const Evolver ev(ecfg);
            const State u = initial_data_U(v, T, make_frame(T, cfg.T0, cfg.delta), ev.grid());
            const TrajectoryRecord tr = ev.evolve(u);

            std::vector<std::string> header{"tau"};
            header.insert(header.end(), tr.norm_labels.begin(), tr.norm_labels.end());
            header.push_back("gauge_amplitude");
            header.push_back("phi1_origin");
            std::vector<std::vector<double>> rows;
            for (size_t i = 0; i < tr.times.size(); ++i) {
                std::vector<double> row{tr.times[i]};
                row.insert(row.end(), tr.norms[i].begin(), tr.norms[i].end());
                row.push_back(tr.gauge_amplitude[i]);
                row.push_back(tr.origin_phi1[i]);
                rows.push_back(std::move(row));
            }
            const std::string file = "trajectory_d" + std::to_string(d) + ".csv";
            w.csv(file, header, rows);

            json fits = json::object();
            for (size_t k = 0; k < tr.norm_labels.size(); ++k) fits[tr.norm_labels[k]] = fit_json(tr.order_fits[k]);
            const double t_end = tr.times.empty() ? 0.0 : tr.times.back();
            const auto series = origin_gradient_series(tr, T, dim, 0.0, t_end);
            const BlowupEstimate est = estimate_blowup_time(series.first, series.second);
            s["T"] = T;
            s["dtau"] = tr.dtau;
            s["gauge"] = cfg.gauge;
            s["decay_fit"] = fit_json(tr.decay_fit);
            s["order_fits"] = fits;
            s["diverged"] = tr.diverged;
            s["event"] = tr.event;
            s["divergence_tau"] = num(tr.divergence_tau);
            s["picard_iterations"] = tr.picard_iterations;
            s["blowup_estimate"] = {{"T", num(est.T)}, {"residual", num(est.residual)}, {"reliable", est.reliable}};
            if (ev.projection().left_mode.size()) {
                const CorrectionTerm c = correction_term(tr, u, ev.projection());
                s["correction"] = {{"value", c.value}, {"tail_bound", c.tail_bound}, {"tail_warning", c.tail_warning}};
            }
            s["trajectory_file"] = file;
            const bool ok = !(tr.diverged && ecfg.gauge != GaugeHandling::none);
            out.checks.push_back({"simulate d=" + std::to_string(d), ok,
                                  tr.diverged ? tr.event : std::string("completed")});
        } catch (const std::exception& e) {
            s["error"] = e.what();
            out.errors.push_back("d=" + std::to_string(d) + ": " + e.what());
            out.checks.push_back({"simulate d=" + std::to_string(d), false, e.what()});
        }
        per_d.push_back(s);
    }
    out.summary["runs"] = per_d;
}

void spectrum(const RunConfig& cfg, RunWriter& w, CommandOutput& out) {
    const SearchRegion region = parse_region(cfg.region);
    SearchOptions so;
    so.exec = execution_of(cfg);
    json per_d = json::array();
    for (int d : cfg.dims) {
        const Dimension dim(d);
        json s = {{"d", d}, {"region", to_string(region)}};
        try {
            const SpectrumReport rep = find_eigenvalues(region, dim, so);
            json roots = json::array();
            for (const auto& e : rep.eigenvalues) {
                roots.push_back({{"re", e.value.real()}, {"im", e.value.imag()}, {"residual", e.residual}});
            }
            s["eigenvalues"] = roots;
            s["winding_count"] = rep.winding_count;
            s["consistent"] = rep.consistent;
            s["boundary_max"] = rep.boundary_max;
            s["boundary_min"] = rep.boundary_min;
            s["evaluations"] = rep.evaluations;
            s["seeds"] = rep.seeds;
            std::vector<std::vector<double>> rows;
            for (const auto& b : rep.boundary_samples) rows.push_back({b.lambda.real(), b.lambda.imag(), b.abs_w});
            w.csv("boundary_d" + std::to_string(d) + ".csv", {"re", "im", "abs_w"}, rows);

            const auto col = collocation_spectrum(dim, cfg.collocation_n);
            std::vector<std::vector<double>> crows;
            int converged_right = 0;
            for (const auto& c : col) {
                crows.push_back({c.value.real(), c.value.imag(), c.converged ? 1.0 : 0.0});
                if (c.converged && c.value.real() >= 0.0) ++converged_right;
            }
            w.csv("collocation_d" + std::to_string(d) + ".csv", {"re", "im", "converged"}, crows);
            s["collocation_converged_right_half_plane"] = converged_right;
            std::string roots_text;
            for (const auto& e : rep.eigenvalues) {
                roots_text += (roots_text.empty() ? "" : ", ") + number(e.value.real()) + (e.value.imag() < 0 ? "" : "+") +
                              number(e.value.imag()) + "i";
            }
            out.checks.push_back({"spectrum d=" + std::to_string(d), rep.consistent,
                                  "winding " + std::to_string(rep.winding_count) + ", roots {" + roots_text + "}"});
        } catch (const std::exception& e) {
            s["error"] = e.what();
            out.errors.push_back("d=" + std::to_string(d) + ": " + e.what());
            out.checks.push_back({"spectrum d=" + std::to_string(d), false, e.what()});
        }
        per_d.push_back(s);
    }
    out.summary["reports"] = per_d;
}

void appendix(const RunConfig& cfg, RunWriter&, CommandOutput& out) {
    json certs = json::array();
    for (int d : cfg.dims) {
        json s = {{"d", d}};
        try {
            bool ok = true;
            std::string detail;
            if (d >= 5) {
                const Dimension dim(d);
                const LogDetection L = log_coefficient_Id(dim);
                const int m = (d - 1) / 2;
                const SusyWitness sw = susy_residual(m);
                const double jm = J_m_identity_error(m);
                s["log_coefficient"] = {{"exact", L.exact},
                                        {"series", L.series},
                                        {"fit", L.fit},
                                        {"agreement", L.agreement},
                                        {"fit_reliable", L.fit_reliable},
                                        {"fit_rms", L.fit_rms},
                                        {"b0", L.b0},
                                        {"taylor_coefficient", L.taylor_coefficient}};
                s["methods"] = {"series-recurrence", "fit-from-quadrature"};
                s["susy"] = {{"m", m},
                             {"residual_sup", sw.residual_sup},
                             {"residual_sup_exact", sw.residual_sup_exact},
                             {"factored_residual", sw.factored_residual},
                             {"inverse_v1_residual", sw.inverse_v1_residual}};
                s["Jm_identity_max_error"] = jm;
                ok = L.exact != "0" && sw.residual_sup < 1e-8 && sw.residual_sup_exact < 1e-8 && jm < 1e-10;
                detail = "log coefficient " + L.exact + ", SUSY " + number(sw.residual_sup) + ", J_m " + number(jm);
            } else {
                const auto [fit, exact] = u_hat2_log_coefficient_d3();
                s["uhat2_log_coefficient"] = {{"fit", fit}, {"exact", exact}};
                ok = std::abs(fit) > 1e-6;
                detail = "uhat2 log(1-rho) coefficient " + number(fit);
            }
            out.checks.push_back({"appendix d=" + std::to_string(d), ok, detail});
        } catch (const std::exception& e) {
            s["error"] = e.what();
            out.errors.push_back("d=" + std::to_string(d) + ": " + e.what());
            out.checks.push_back({"appendix d=" + std::to_string(d), false, e.what()});
        }
        certs.push_back(s);
    }
    out.summary["certificates"] = certs;
}

void norms(const RunConfig& cfg, RunWriter& w, CommandOutput& out) {
    json per_d = json::array();
    for (int d : cfg.dims) {
        json s = {{"d", d}};
        try {
            const auto ex = profile_norm_exponents(Dimension(d), {1.0, 0.5, 0.25}, cfg.n);
            std::vector<std::vector<double>> rows;
            double worst = 0.0;
            for (const auto& e : ex) {
                rows.push_back({double(e.component), double(e.order), e.fitted, e.expected});
                worst = std::max(worst, std::abs(e.fitted - e.expected));
            }
            w.csv("exponents_d" + std::to_string(d) + ".csv", {"component", "order", "fitted", "expected"}, rows);
            s["max_exponent_error"] = worst;
            out.checks.push_back({"norms d=" + std::to_string(d), worst < 1e-3, "max exponent error " + number(worst)});
        } catch (const std::exception& e) {
            s["error"] = e.what();
            out.errors.push_back("d=" + std::to_string(d) + ": " + e.what());
            out.checks.push_back({"norms d=" + std::to_string(d), false, e.what()});
        }
        per_d.push_back(s);
    }
    out.summary["exponents"] = per_d;
}

json criterion_json(const CriterionResult& r) {
    json metrics = json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = num(v);
    return {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"metrics", metrics}};
}

// Criteria 1..10 as (summary entry, file name -> csv text).
struct CriteriaPass {
    std::vector<CriterionResult> results;
    json entries = json::array();
    std::vector<std::pair<std::string, std::string>> files;
};

CriteriaPass run_criteria_pass(const std::vector<int>& ids, const VerifyOptions& opt, std::vector<std::string>& errors) {
    CriteriaPass pass;
    for (int id : ids) {
        if (id == kCriterionCount) continue;
        CriterionResult r;
        try {
            r = run_criterion(id, opt);
        } catch (const std::exception& e) {
            r.id = id;
            r.name = criterion_name(id);
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
            errors.push_back("criterion " + std::to_string(id) + ": " + e.what());
        }
        pass.entries.push_back(criterion_json(r));
        for (const Table& t : r.tables) {
            std::string s;
            for (size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
            s += "\n";
            for (const auto& row : t.rows) {
                for (size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + number(row[i]);
                s += "\n";
            }
            char prefix[16];
            std::snprintf(prefix, sizeof prefix, "c%02d_", id);
            pass.files.emplace_back(prefix + t.name + ".csv", s);
        }
        pass.results.push_back(std::move(r));
    }
    return pass;
}

void verify_all(const RunConfig& cfg, RunWriter& w, CommandOutput& out, json& timings) {
    const std::vector<int> ids = parse_criteria(cfg.criteria);
    VerifyOptions opt;
    opt.seed = cfg.seed;
    opt.evolution_n = cfg.n;
    opt.collocation_n = cfg.collocation_n;
    opt.exec = execution_of(cfg);

    CriteriaPass first = run_criteria_pass(ids, opt, out.errors);
    json entries = first.entries;
    for (const auto& r : first.results) timings[std::to_string(r.id)] = r.seconds;

    if (std::find(ids.begin(), ids.end(), kCriterionCount) != ids.end()) {
        auto serialize = [](const CriteriaPass& p) {
            auto files = p.files;
            files.emplace_back("criteria", p.entries.dump());
            return files;
        };
        std::vector<std::string> ignored;
        const CriteriaPass second = run_criteria_pass(ids, opt, ignored);
        const CriterionResult r = check_determinism(serialize(first), serialize(second));
        timings["11"] = r.seconds;
        entries.push_back(criterion_json(r));
        first.results.push_back(r);
    }

    std::vector<std::vector<double>> rows;
    for (const auto& r : first.results) rows.push_back({double(r.id), r.passed ? 1.0 : 0.0});
    w.csv("criteria.csv", {"id", "passed"}, rows);
    for (const auto& [name, content] : first.files) w.text(name, content);
    for (const auto& r : first.results) out.checks.push_back({"criterion " + std::to_string(r.id) + " " + r.name, r.passed, r.detail});
    out.summary["criteria"] = entries;
}

}  // namespace

const std::vector<std::string>& run_commands() {
    static const std::vector<std::string> c{"simulate", "spectrum", "appendix", "norms", "verify-all"};
    return c;
}

ConfigError::ConfigError(std::vector<std::string> errs)
    : std::invalid_argument([&] {
          std::string s = "invalid configuration:";
          for (const auto& e : errs) s += "\n  " + e;
          return s;
      }()),
      errors(std::move(errs)) {}

std::vector<std::string> validate(const RunConfig& cfg) {
    std::vector<std::string> e;
    const auto& cmds = run_commands();
    if (std::find(cmds.begin(), cmds.end(), cfg.command) == cmds.end()) {
        e.push_back("command: must be one of simulate|spectrum|appendix|norms|verify-all, got '" + cfg.command + "'");
    }
    if (cfg.dims.empty()) e.push_back("dims: at least one dimension required");
    std::set<int> seen;
    for (int d : cfg.dims) {
        if (d < 3 || d % 2 == 0) e.push_back("dims: " + std::to_string(d) + " is not an odd integer >= 3");
        if (!seen.insert(d).second) e.push_back("dims: " + std::to_string(d) + " listed twice");
    }
    if (cfg.n < 16) e.push_back("n: must be >= 16, got " + std::to_string(cfg.n));
    if (cfg.collocation_n < 32) e.push_back("collocation_n: must be >= 32, got " + std::to_string(cfg.collocation_n));
    if (!(cfg.dtau >= 0.0) || !std::isfinite(cfg.dtau)) e.push_back("dtau: must be >= 0 (0 selects cfl/n^2)");
    if (!(cfg.cfl > 0.0) || !std::isfinite(cfg.cfl)) e.push_back("cfl: must be positive");
    if (!(cfg.tau_max > 0.0) || !std::isfinite(cfg.tau_max)) e.push_back("tau_max: must be positive");
    const auto& shapes = perturbation_shapes();
    if (std::find(shapes.begin(), shapes.end(), cfg.shape) == shapes.end()) {
        e.push_back("shape: must be one of gaussian|cubic|profile_shift, got '" + cfg.shape + "'");
    }
    if (!std::isfinite(cfg.amplitude)) e.push_back("amplitude: must be finite");
    if (cfg.gauge != "none" && cfg.gauge != "project" && cfg.gauge != "adjust_T") {
        e.push_back("gauge: must be one of none|project|adjust_T, got '" + cfg.gauge + "'");
    }
    if (!(cfg.T0 > 0.0) || !std::isfinite(cfg.T0)) e.push_back("T0: must be positive");
    if (!(cfg.delta > 0.0) || !(cfg.delta < cfg.T0)) e.push_back("delta: must satisfy 0 < delta < T0");
    try {
        parse_region(cfg.region);
    } catch (const std::exception& ex) {
        e.push_back(std::string("region: ") + ex.what());
    }
    try {
        parse_criteria(cfg.criteria);
    } catch (const std::exception& ex) {
        e.push_back(std::string("criteria: ") + ex.what());
    }
    if (cfg.execution != "serial" && cfg.execution != "parallel") {
        e.push_back("execution: must be serial or parallel, got '" + cfg.execution + "'");
    }
    return e;
}

std::string config_to_json(const RunConfig& cfg) {
    const json j = {{"schema_version", kSchemaVersion},
                    {"command", cfg.command},
                    {"dims", cfg.dims},
                    {"n", cfg.n},
                    {"collocation_n", cfg.collocation_n},
                    {"dtau", cfg.dtau},
                    {"cfl", cfg.cfl},
                    {"tau_max", cfg.tau_max},
                    {"shape", cfg.shape},
                    {"amplitude", cfg.amplitude},
                    {"gauge", cfg.gauge},
                    {"nonlinear", cfg.nonlinear},
                    {"select_T", cfg.select_T},
                    {"T0", cfg.T0},
                    {"delta", cfg.delta},
                    {"region", cfg.region},
                    {"criteria", cfg.criteria},
                    {"output_dir", cfg.output_dir},
                    {"seed", cfg.seed},
                    {"execution", cfg.execution}};
    return j.dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("config: not valid JSON (") + e.what() + ")"});
    }
    if (!j.is_object()) throw ConfigError({"config: top level must be an object"});
    RunConfig cfg;
    std::vector<std::string> errors;
    auto take = [&](const char* key, auto& field) {
        if (!j.contains(key)) return;
        using F = std::decay_t<decltype(field)>;
        const json& v = j.at(key);
        if constexpr (std::is_same_v<F, int> || std::is_same_v<F, std::uint64_t>) {
            if (!v.is_number_integer() || (std::is_unsigned_v<F> && !v.is_number_unsigned())) {
                errors.push_back(std::string(key) + ": expected an integer, got " + v.dump());
                return;
            }
        }
        if constexpr (std::is_same_v<F, std::vector<int>>) {
            if (v.is_array() && !std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number_integer(); })) {
                errors.push_back(std::string(key) + ": expected a list of integers, got " + v.dump());
                return;
            }
        }
        try {
            v.get_to(field);
        } catch (const json::exception&) {
            errors.push_back(std::string(key) + ": wrong type (" + j.at(key).type_name() + ")");
        }
    };
    take("command", cfg.command);
    take("dims", cfg.dims);
    take("n", cfg.n);
    take("collocation_n", cfg.collocation_n);
    take("dtau", cfg.dtau);
    take("cfl", cfg.cfl);
    take("tau_max", cfg.tau_max);
    take("shape", cfg.shape);
    take("amplitude", cfg.amplitude);
    take("gauge", cfg.gauge);
    take("nonlinear", cfg.nonlinear);
    take("select_T", cfg.select_T);
    take("T0", cfg.T0);
    take("delta", cfg.delta);
    take("region", cfg.region);
    take("criteria", cfg.criteria);
    take("output_dir", cfg.output_dir);
    take("seed", cfg.seed);
    take("execution", cfg.execution);
    static const std::set<std::string> known{"schema_version", "command", "dims",     "n",         "collocation_n",
                                             "dtau",           "cfl",     "tau_max",  "shape",     "amplitude",
                                             "gauge",          "nonlinear", "select_T", "T0",      "delta",
                                             "region",         "criteria", "output_dir", "seed",   "execution"};
    for (const auto& item : j.items()) {
        if (!known.count(item.key())) errors.push_back(item.key() + ": unknown field");
    }
    if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion) {
        errors.push_back("schema_version: expected " + std::to_string(kSchemaVersion));
    }
    if (!errors.empty()) throw ConfigError(errors);
    return cfg;
}

fs::path output_root(const RunConfig& cfg) {
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("WMLAB_RUNS_DIR"); env && *env) return env;
    return "runs";
}

RunRecord run(const RunConfig& cfg) {
    if (auto errs = validate(cfg); !errs.empty()) throw ConfigError(errs);
    RunRecord rec;
    rec.config = cfg;
    rec.started = utc_now("%Y-%m-%dT%H:%M:%SZ");
    const auto t0 = std::chrono::steady_clock::now();
    rec.directory = make_run_directory(output_root(cfg), cfg.command);
    RunWriter w(rec.directory);
    w.text("config.json", config_to_json(cfg));

    CommandOutput out;
    json timings = json::object();
    try {
        if (cfg.command == "simulate") simulate(cfg, w, out);
        else if (cfg.command == "spectrum") spectrum(cfg, w, out);
        else if (cfg.command == "appendix") appendix(cfg, w, out);
        else if (cfg.command == "norms") norms(cfg, w, out);
        else verify_all(cfg, w, out, timings);
    } catch (const std::exception& e) {
        out.errors.push_back(e.what());
    }

    rec.checks = out.checks;
    rec.errors = out.errors;
    rec.ok = out.errors.empty() && !out.checks.empty() &&
             std::all_of(out.checks.begin(), out.checks.end(), [](const CheckOutcome& c) { return c.passed; });

    json checks = json::array();
    for (const auto& c : out.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    json summary = {{"schema_version", kSchemaVersion},
                    {"artifact_version", kArtifactVersion},
                    {"command", cfg.command},
                    {"seed", cfg.seed},
                    {"ok", rec.ok},
                    {"checks", checks},
                    {"errors", out.errors}};
    for (auto& [k, v] : out.summary.items()) summary[k] = v;
    w.json_file("summary.json", summary);

    rec.finished = utc_now("%Y-%m-%dT%H:%M:%SZ");
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.files = w.files();
    rec.files.push_back("run_record.json");
    json record = {{"schema_version", kSchemaVersion},
                   {"artifact_version", kArtifactVersion},
                   {"config", json::parse(config_to_json(cfg))},
                   {"started", rec.started},
                   {"finished", rec.finished},
                   {"runtime_seconds", seconds},
                   {"criterion_seconds", timings},
                   {"files", rec.files},
                   {"ok", rec.ok}};
    json pf = json::object();
    for (const auto& c : out.checks) pf[c.name] = c.passed;
    record["pass_fail"] = pf;
    w.json_file("run_record.json", record);
    return rec;
}

std::vector<std::pair<std::string, std::string>> deterministic_outputs(const fs::path& dir) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name == "run_record.json" || !entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        out.emplace_back(name, std::string(std::istreambuf_iterator<char>(in), {}));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace wmlab
