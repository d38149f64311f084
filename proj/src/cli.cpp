#include "fracmkt/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "fracmkt/endowments.hpp"
#include "fracmkt/error.hpp"
#include "fracmkt/experiments.hpp"
#include "fracmkt/market.hpp"

namespace fracmkt::cli {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("format must be csv or json, got '" + s + "'");
}

std::vector<double> parse_values(const std::string& s) {
    std::vector<double> values;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("sweep value '" + item + "' is not a number");
        }
    }
    return values;
}

}  // namespace

RunConfig config_from_json(const Json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    for (const auto& [key, v] : j.items()) {
        if (key == "params") {
            c.params = params_from_json(v);
        } else if (key == "population") {
            if (!v.is_object()) throw ConfigError("'population' must be an object");
            for (const auto& [pk, pv] : v.items()) {
                if (pk == "endowments") c.endowments = resolve(base_dir, pv.get<std::string>());
                else if (pk == "profile") c.profile = resolve(base_dir, pv.get<std::string>());
                else if (pk == "population_seed") c.population_seed = pv.get<std::uint64_t>();
                else throw ConfigError("unknown population field '" + pk + "'");
            }
            if (c.endowments && c.profile) {
                throw ConfigError("population: give either 'endowments' or 'profile', not both");
            }
        } else if (key == "reps") {
            c.reps = v.get<std::size_t>();
        } else if (key == "seed") {
            c.seed = v.get<std::uint64_t>();
        } else if (key == "jobs") {
            c.jobs = v.get<unsigned>();
        } else if (key == "out") {
            c.out = resolve(base_dir, v.get<std::string>());
        } else if (key == "format") {
            c.format = parse_format(v.get<std::string>());
        } else if (key == "trace") {
            c.trace = v.get<bool>();
        } else if (key == "trace_out") {
            c.trace_out = resolve(base_dir, v.get<std::string>());
        } else if (key == "sweep") {
            c.sweep_parameter = v.at("parameter").get<std::string>();
            c.sweep_values = v.at("values").get<std::vector<double>>();
        } else if (key == "calibrate") {
            for (const auto& [ck, cv] : v.items()) {
                if (ck == "budget") c.budget = cv.get<std::size_t>();
                else if (ck == "days_per_eval") c.days_per_eval = cv.get<std::size_t>();
                else if (ck == "rounds") c.rounds = cv.get<std::size_t>();
                else if (ck == "targets") c.targets = targets_from_json(cv);
                else throw ConfigError("unknown calibrate field '" + ck + "'");
            }
        } else {
            throw ConfigError("unknown config field '" + key + "'");
        }
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    try {
        return config_from_json(Json::parse(in), path.parent_path());
    } catch (const Json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::string out;
    std::string format;
    std::optional<unsigned> jobs;
    bool trace = false;
    std::string trace_out;
    std::string endowments;
    std::string profile;
    std::optional<std::uint64_t> population_seed;
    std::vector<std::string> param_overrides;
    std::string parameter;
    std::string values;
    std::optional<std::size_t> budget;
    std::optional<std::size_t> days_per_eval;
    std::optional<std::size_t> rounds;
    std::string targets;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON config file");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--out", f.out, "output path (default: stdout)");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--jobs", f.jobs, "worker threads (0 = all cores)");
}

void add_population(CLI::App* cmd, Flags& f) {
    auto* e = cmd->add_option("--endowments", f.endowments, "endowment CSV (kind,shares,cash)");
    auto* p = cmd->add_option("--profile", f.profile, "endowment profile JSON");
    e->excludes(p);
    cmd->add_option("--population-seed", f.population_seed, "seed for generating the population from a profile");
    cmd->add_option("--param", f.param_overrides, "parameter override NAME=VALUE (repeatable)");
}

RunConfig resolve_config(const Flags& f) {
    RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
    if (f.seed) c.seed = *f.seed;
    if (f.reps) c.reps = *f.reps;
    if (!f.out.empty()) c.out = f.out;
    if (!f.format.empty()) c.format = parse_format(f.format);
    if (f.jobs) c.jobs = *f.jobs;
    if (f.trace) c.trace = true;
    if (!f.trace_out.empty()) c.trace_out = f.trace_out;
    if (!f.endowments.empty()) {
        c.endowments = f.endowments;
        c.profile.reset();
    }
    if (!f.profile.empty()) {
        c.profile = f.profile;
        c.endowments.reset();
    }
    if (f.population_seed) c.population_seed = *f.population_seed;
    for (const std::string& kv : f.param_overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--param expects NAME=VALUE, got '" + kv + "'");
        const auto values = parse_values(kv.substr(eq + 1));
        if (values.size() != 1) throw ConfigError("--param expects a single value, got '" + kv + "'");
        set_param(c.params, kv.substr(0, eq), values.front());
    }
    if (!f.parameter.empty()) c.sweep_parameter = f.parameter;
    if (!f.values.empty()) c.sweep_values = parse_values(f.values);
    if (f.budget) c.budget = *f.budget;
    if (f.days_per_eval) c.days_per_eval = *f.days_per_eval;
    if (f.rounds) c.rounds = *f.rounds;
    if (!f.targets.empty()) {
        std::ifstream in(f.targets);
        if (!in) throw ConfigError("cannot open targets " + f.targets);
        c.targets = targets_from_json(Json::parse(in));
    }
    c.params.validate();
    return c;
}

Population population_for(const RunConfig& c) {
    if (c.endowments) return load_population(*c.endowments);
    if (c.profile || c.population_seed) {
        const ProfileDocument doc = c.profile ? load_profile(*c.profile) : default_profile();
        Rng rng(c.population_seed.value_or(doc.population_seed));
        return generate_population(doc.profile, rng);
    }
    return default_population();
}

// Writes to --out when given, else to `out`.
template <typename Fn>
void emit(const RunConfig& c, std::ostream& out, Fn&& write) {
    if (!c.out) {
        write(out);
        return;
    }
    std::ofstream file(*c.out);
    if (!file) throw std::runtime_error("cannot write " + c.out->string());
    write(file);
}

int cmd_run(const RunConfig& c, std::ostream& out) {
    const DayResult day = run_day(population_for(c), c.params, c.seed);
    emit(c, out, [&](std::ostream& os) {
        if (c.format == OutputFormat::Json) {
            os << day_metrics_to_json(day.metrics).dump(2) << '\n';
        } else {
            write_day_metrics_csv(os, day.metrics);
        }
    });
    if (c.trace) {
        const std::filesystem::path path =
            c.trace_out ? *c.trace_out : (c.out ? std::filesystem::path(c.out->string() + ".trace.jsonl") : "trace.jsonl");
        std::ofstream file(path);
        if (!file) throw std::runtime_error("cannot write trace " + path.string());
        write_trace_jsonl(file, day.trace);
    }
    return kExitOk;
}

int cmd_batch(const RunConfig& c, std::ostream& out) {
    const BatchResult batch = run_batch(c.params, population_for(c), c.reps, c.seed, c.jobs);
    emit(c, out, [&](std::ostream& os) {
        if (c.format == OutputFormat::Json) {
            os << aggregate_to_json(batch.aggregate).dump(2) << '\n';
        } else {
            write_aggregate_csv(os, batch.aggregate);
        }
    });
    return kExitOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
    if (c.sweep_parameter.empty()) throw ConfigError("sweep needs --parameter");
    SweepSpec spec{c.sweep_parameter, c.sweep_values, c.reps, c.params, c.seed};
    const auto rows = run_sweep(spec, population_for(c), c.jobs);
    emit(c, out, [&](std::ostream& os) {
        if (c.format == OutputFormat::Json) {
            os << sweep_to_json(spec.parameter, rows).dump(2) << '\n';
        } else {
            write_sweep_csv(os, rows);
        }
    });
    return kExitOk;
}

int cmd_gen_endowments(const RunConfig& c, std::ostream& out) {
    const ProfileDocument doc = c.profile ? load_profile(*c.profile) : default_profile();
    Rng rng(c.population_seed.value_or(doc.population_seed));
    const Population pop = generate_population(doc.profile, rng);
    emit(c, out, [&](std::ostream& os) { write_population(os, pop); });
    return kExitOk;
}

int cmd_calibrate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    CalibrationOptions opt;
    opt.budget = c.budget;
    opt.seed = c.seed;
    opt.days_per_eval = c.days_per_eval;
    opt.rounds = c.rounds;
    opt.jobs = c.jobs;
    opt.params = c.params;
    const CalibrationResult r = calibrate_profile(c.targets, opt);

    ProfileDocument doc{r.profile, r.population_seed, Json::object()};
    doc.calibration = Json{{"seed", c.seed},
                           {"budget", c.budget},
                           {"days_per_eval", c.days_per_eval},
                           {"rounds", c.rounds},
                           {"eval_seed", r.eval_seed},
                           {"objective", r.objective},
                           {"targets", targets_to_json(c.targets)},
                           {"achieved", aggregate_to_json(r.achieved)}};
    emit(c, out, [&](std::ostream& os) { os << profile_to_json(doc).dump(2) << '\n'; });
    err << "objective " << r.objective << " after " << r.evaluations << " evaluations\n";
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Agent-based simulator of a sell-offer-driven secondary market for fractional shares", "fracmkt"};
    app.require_subcommand(1);
    Flags f;

    auto* run_cmd = app.add_subcommand("run", "simulate one trading day");
    add_common(run_cmd, f);
    add_population(run_cmd, f);
    run_cmd->add_flag("--trace", f.trace, "write the fill log as JSON lines");
    run_cmd->add_option("--trace-out", f.trace_out, "fill log path (default: <out>.trace.jsonl or trace.jsonl)");

    auto* batch_cmd = app.add_subcommand("batch", "repeat the day and report averages");
    add_common(batch_cmd, f);
    add_population(batch_cmd, f);
    batch_cmd->add_option("--reps", f.reps, "experiments (default 1000)");

    auto* sweep_cmd = app.add_subcommand("sweep", "batch over a grid of one parameter");
    add_common(sweep_cmd, f);
    add_population(sweep_cmd, f);
    sweep_cmd->add_option("--reps", f.reps, "experiments per value (default 1000)");
    sweep_cmd->add_option("--parameter", f.parameter, "parameter name, market_range_width or market_midpoint");
    sweep_cmd->add_option("--values", f.values, "comma-separated grid");

    auto* gen_cmd = app.add_subcommand("gen-endowments", "write a population generated from a profile");
    add_common(gen_cmd, f);
    gen_cmd->add_option("--profile", f.profile, "endowment profile JSON (default: shipped profile)");
    gen_cmd->add_option("--population-seed", f.population_seed, "overrides the profile's population seed");

    auto* cal_cmd = app.add_subcommand("calibrate", "fit an endowment profile to target metrics");
    add_common(cal_cmd, f);
    cal_cmd->add_option("--budget", f.budget, "profiles to evaluate (default 2000)");
    cal_cmd->add_option("--days-per-eval", f.days_per_eval, "day-runs per evaluation (default 200)");
    cal_cmd->add_option("--rounds", f.rounds, "search rounds (default 4)");
    cal_cmd->add_option("--targets", f.targets, "JSON targets (default: baseline metrics)");
    cal_cmd->add_option("--param", f.param_overrides, "parameter override NAME=VALUE (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const RunConfig c = resolve_config(f);
        // gen-endowments takes its seed from --seed when --population-seed is absent.
        if (gen_cmd->parsed()) {
            RunConfig g = c;
            if (!f.population_seed && f.seed) g.population_seed = *f.seed;
            return cmd_gen_endowments(g, out);
        }
        if (run_cmd->parsed()) return cmd_run(c, out);
        if (batch_cmd->parsed()) return cmd_batch(c, out);
        if (sweep_cmd->parsed()) return cmd_sweep(c, out);
        return cmd_calibrate(c, out, err);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const LoadError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Json::exception& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace fracmkt::cli
