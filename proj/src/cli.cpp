#include "lbsim/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lbsim/bench.hpp"
#include "lbsim/criteria.hpp"
#include "lbsim/optimal.hpp"
#include "lbsim/report.hpp"

namespace lbsim::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        if (!cur.empty()) parts.push_back(cur);
    }
    return parts;
}

template <class T>
T get_field(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

struct Target {
    std::string id;
    Workload workload;
};

Workload apply_overrides(WorkloadModel model, const RunConfig& config) {
    if (config.gamma) model.iterations = *config.gamma;
    if (config.cost) model.lb_cost = *config.cost;
    return Workload(std::move(model));
}

std::vector<Target> resolve_targets(const RunConfig& config, bool allow_all) {
    if (config.bench.has_value() == config.model.has_value()) {
        throw ConfigError("give exactly one of --bench and --inline");
    }
    std::vector<Target> targets;
    if (config.model) {
        targets.push_back({"inline", apply_overrides(model_from_json(*config.model), config)});
        return targets;
    }
    if (*config.bench == "all") {
        if (!allow_all) throw ConfigError("--bench all is only accepted by compare");
        for (const auto& def : catalog()) {
            targets.push_back({def.id, apply_overrides(def.model, config)});
        }
        return targets;
    }
    try {
        const BenchmarkDef& def = find_benchmark(*config.bench);
        targets.push_back({def.id, apply_overrides(def.model, config)});
    } catch (const std::out_of_range& e) {
        throw ConfigError(e.what());
    }
    return targets;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << contents;
    if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::filesystem::path prepare_out(const RunConfig& config) {
    std::filesystem::path dir(config.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
    auto targets = resolve_targets(config, false);
    const Target& target = targets.front();
    if (config.scenario.has_value() == !config.criteria.empty()) {
        throw ConfigError("simulate needs exactly one of --criterion and --scenario");
    }
    if (config.criteria.size() > 1) throw ConfigError("simulate takes a single criterion");

    json summary{{"benchmark", target.id}};
    SimResult result;
    Scenario scenario;
    if (config.scenario) {
        scenario.lb_iterations = *config.scenario;
        try {
            result = simulate(target.workload, scenario);
        } catch (const ScenarioError& e) {
            throw ConfigError(e.what());
        }
        summary["criterion"] = nullptr;
    } else {
        const Criterion criterion = parse_criterion(config.criteria.front());
        CriterionRun run = run_criterion(target.workload, criterion);
        scenario = run.scenario;
        result.total_time = run.scenario.total_time;
        result.trace = std::move(run.trace);
        summary["criterion"] = to_string(criterion);
    }
    scenario.total_time = result.total_time;
    summary.update(scenario_to_json(scenario));

    std::ostringstream csv;
    write_trace_csv(csv, result.trace);
    const auto dir = prepare_out(config);
    write_file(dir / "trace.csv", csv.str());
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    out << summary.dump(2) << "\n";
    return 0;
}

int cmd_optimal(const RunConfig& config, std::ostream& out) {
    auto targets = resolve_targets(config, false);
    const Target& target = targets.front();
    if (config.nth < 1) throw ConfigError("--nth must be >= 1");

    json summary{{"benchmark", target.id}};
    if (config.nth == 1) {
        OptimalResult best = search_optimal(target.workload);
        summary.update(scenario_to_json(best.scenario));
        summary["stats"] = stats_to_json(best.stats);
    } else {
        NthBestResult ranked = search_nth_best(target.workload, config.nth);
        summary.update(scenario_to_json(ranked.scenarios.front()));
        summary["stats"] = stats_to_json(ranked.stats);
        json list = json::array();
        for (const auto& s : ranked.scenarios) list.push_back(scenario_to_json(s));
        summary["nth"] = std::move(list);
    }

    bool match = true;
    if (config.verify_brute) {
        if (config.gamma_cap < 1) throw ConfigError("--gamma-cap must be >= 1");
        const Iteration gamma = std::min(target.workload.iterations(), config.gamma_cap);
        const Workload small = target.workload.truncated(gamma);
        const Scenario searched = search_optimal(small).scenario;
        std::vector<Scenario> all;
        try {
            all = brute_force(small, config.gamma_cap);
        } catch (const BruteForceRefused& e) {
            throw ConfigError(e.what());
        }
        match = searched.total_time == all.front().total_time;
        summary["verify"] = {
            {"gamma", gamma},
            {"search_total", searched.total_time},
            {"brute_total", all.front().total_time},
            {"match", match},
        };
    }

    const auto dir = prepare_out(config);
    write_file(dir / "optimal.json", summary.dump(2) + "\n");
    out << summary.dump(2) << "\n";
    if (config.verify_brute) out << (match ? "MATCH" : "MISMATCH") << "\n";
    return match ? 0 : 1;
}

int cmd_compare(const RunConfig& config, std::ostream& out) {
    auto targets = resolve_targets(config, true);
    if (config.criteria.empty()) throw ConfigError("compare needs --criteria");
    std::vector<Criterion> criteria;
    for (const auto& spec : config.criteria) criteria.push_back(parse_criterion(spec));

    std::vector<NamedWorkload> named;
    for (auto& t : targets) named.push_back({t.id, std::move(t.workload)});
    const ComparisonReport report = compare(named, criteria);

    std::ostringstream csv;
    write_report_csv(csv, report);
    const auto dir = prepare_out(config);
    write_file(dir / "report.csv", csv.str());
    write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
    out << csv.str();
    return 0;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
    auto targets = resolve_targets(config, false);
    if (config.criteria.size() != 1) throw ConfigError("sweep needs one --criterion family");
    SweepResult result;
    try {
        result = sweep(targets.front().workload, config.criteria.front(), config.sweep.param,
                       config.sweep.from, config.sweep.to, config.sweep.steps);
    } catch (const SweepError& e) {
        throw ConfigError(e.what());
    }
    json summary = sweep_to_json(result);
    summary["benchmark"] = targets.front().id;

    std::ostringstream csv;
    write_sweep_csv(csv, result);
    const auto dir = prepare_out(config);
    write_file(dir / "sweep.csv", csv.str());
    write_file(dir / "sweep_summary.json", summary.dump(2) + "\n");
    out << summary.dump(2) << "\n";
    return 0;
}

}  // namespace

json to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["bench"] = c.bench ? json(*c.bench) : json(nullptr);
    j["model"] = c.model ? *c.model : json(nullptr);
    j["gamma"] = c.gamma ? json(*c.gamma) : json(nullptr);
    j["cost"] = c.cost ? json(*c.cost) : json(nullptr);
    j["criteria"] = c.criteria;
    j["scenario"] = c.scenario ? json(*c.scenario) : json(nullptr);
    j["out"] = c.out;
    j["nth"] = c.nth;
    j["verify_brute"] = c.verify_brute;
    j["gamma_cap"] = c.gamma_cap;
    j["sweep"] = {
        {"param", c.sweep.param},
        {"from", c.sweep.from},
        {"to", c.sweep.to},
        {"steps", c.sweep.steps},
    };
    return j;
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    auto present = [&](const char* key) { return j.contains(key) && !j.at(key).is_null(); };
    if (present("command")) c.command = get_field<std::string>(j, "command");
    if (present("bench")) c.bench = get_field<std::string>(j, "bench");
    if (present("model")) c.model = j.at("model");
    if (present("gamma")) c.gamma = get_field<Iteration>(j, "gamma");
    if (present("cost")) c.cost = get_field<double>(j, "cost");
    if (present("criteria")) c.criteria = get_field<std::vector<std::string>>(j, "criteria");
    if (present("scenario")) c.scenario = get_field<std::vector<Iteration>>(j, "scenario");
    if (present("out")) c.out = get_field<std::string>(j, "out");
    if (present("nth")) c.nth = get_field<std::size_t>(j, "nth");
    if (present("verify_brute")) c.verify_brute = get_field<bool>(j, "verify_brute");
    if (present("gamma_cap")) c.gamma_cap = get_field<Iteration>(j, "gamma_cap");
    if (present("sweep")) {
        const json& s = j.at("sweep");
        if (s.contains("param")) c.sweep.param = get_field<std::string>(s, "param");
        if (s.contains("from")) c.sweep.from = get_field<double>(s, "from");
        if (s.contains("to")) c.sweep.to = get_field<double>(s, "to");
        if (s.contains("steps")) c.sweep.steps = get_field<std::size_t>(s, "steps");
    }
    return c;
}

WorkloadModel model_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("inline model must be a JSON object");
    for (const char* key : {"gamma", "P", "W0", "C", "iota"}) {
        if (!j.contains(key)) throw ConfigError(std::string("inline model lacks '") + key + "'");
    }
    WorkloadModel m;
    m.iterations = get_field<Iteration>(j, "gamma");
    m.pe_count = get_field<std::int64_t>(j, "P");
    m.initial_workload = get_field<double>(j, "W0");
    m.lb_cost = get_field<double>(j, "C");
    m.iota = Expr::parse(get_field<std::string>(j, "iota"));
    if (j.contains("omega")) m.omega = Expr::parse(get_field<std::string>(j, "omega"));
    if (j.contains("omega_scope")) {
        m.omega_scope = parse_omega_scope(get_field<std::string>(j, "omega_scope"));
    }
    return m;
}

std::vector<Iteration> parse_scenario_list(const std::string& text) {
    std::string normalized = text;
    for (char& ch : normalized) {
        if (ch == ',') ch = ';';
    }
    std::vector<Iteration> out;
    for (const auto& part : split(normalized, ';')) {
        Iteration v = 0;
        auto res = std::from_chars(part.data(), part.data() + part.size(), v);
        if (res.ec != std::errc() || res.ptr != part.data() + part.size()) {
            throw ConfigError("bad scenario entry '" + part + "'");
        }
        out.push_back(v);
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Load-balancing criteria and optimal scenario laboratory", "lbsim"};
    app.require_subcommand(1);

    struct Flags {
        std::string config_file;
        std::string bench;
        std::string inline_model;
        Iteration gamma = 0;
        double cost = 0.0;
        std::string criteria;
        std::string scenario;
        std::string out;
        std::size_t nth = 1;
        bool verify_brute = false;
        Iteration gamma_cap = 20;
        std::string param;
        double from = 0.0;
        double to = 0.0;
        std::size_t steps = 0;
        bool seed_free = false;
        bool dump_config = false;
    } flags;

    struct Registered {
        CLI::App* sub;
        std::map<std::string, CLI::Option*> opts;
    };
    std::vector<Registered> subs;

    auto add_sub = [&](const std::string& name, const std::string& help) {
        Registered r{app.add_subcommand(name, help), {}};
        CLI::App* s = r.sub;
        r.opts["config"] = s->add_option("--config", flags.config_file, "JSON RunConfig file");
        r.opts["bench"] = s->add_option("--bench", flags.bench, "catalog id (or 'all' for compare)");
        r.opts["inline"] = s->add_option("--inline", flags.inline_model, "inline model JSON");
        r.opts["gamma"] = s->add_option("--gamma", flags.gamma, "override the number of iterations");
        r.opts["cost"] = s->add_option("--cost", flags.cost, "override the load-balancing cost C");
        r.opts["criteria"] =
            s->add_option("--criterion,--criteria", flags.criteria, "criterion spec(s), comma separated");
        r.opts["out"] = s->add_option("--out", flags.out, "output directory");
        r.opts["seed_free"] = s->add_flag("--seed-free", flags.seed_free, "reserved");
        r.opts["dump_config"] = s->add_flag("--dump-config", flags.dump_config,
                                            "print the effective config and exit");
        r.opts["scenario"] = s->add_option("--scenario", flags.scenario, "balancing iterations, e.g. \"46;92\"");
        r.opts["nth"] = s->add_option("--nth", flags.nth, "number of best scenarios");
        r.opts["verify_brute"] = s->add_flag("--verify-brute", flags.verify_brute,
                                             "check against exhaustive enumeration");
        r.opts["gamma_cap"] = s->add_option("--gamma-cap", flags.gamma_cap, "enumeration cap on gamma");
        r.opts["param"] = s->add_option("--param", flags.param, "parameter to sweep");
        r.opts["from"] = s->add_option("--from", flags.from, "grid start");
        r.opts["to"] = s->add_option("--to", flags.to, "grid end");
        r.opts["steps"] = s->add_option("--steps", flags.steps, "grid points");
        subs.push_back(std::move(r));
    };
    add_sub("simulate", "simulate one scenario or criterion");
    add_sub("optimal", "search the optimal (or n best) scenarios");
    add_sub("compare", "compare criteria against the optimum");
    add_sub("sweep", "sweep a criterion parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const Registered* active = nullptr;
    for (const auto& r : subs) {
        if (r.sub->parsed()) active = &r;
    }
    auto given = [&](const char* key) { return active->opts.at(key)->count() > 0; };

    try {
        if (flags.seed_free) {
            throw ConfigError("--seed-free is reserved: the model is deterministic and uses no RNG");
        }
        RunConfig config;
        if (given("config")) {
            std::ifstream f(flags.config_file);
            if (!f) throw ConfigError("cannot read config " + flags.config_file);
            json j;
            try {
                j = json::parse(f);
            } catch (const json::exception& e) {
                throw ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
            config = config_from_json(j);
        }
        config.command = active->sub->get_name();
        if (given("bench")) {
            config.bench = flags.bench;
            config.model.reset();
        }
        if (given("inline")) {
            try {
                config.model = json::parse(flags.inline_model);
            } catch (const json::exception& e) {
                throw ConfigError(std::string("--inline is not valid JSON: ") + e.what());
            }
            if (!given("bench")) config.bench.reset();
        }
        if (given("gamma")) config.gamma = flags.gamma;
        if (given("cost")) config.cost = flags.cost;
        if (given("criteria")) config.criteria = split(flags.criteria, ',');
        if (given("scenario")) config.scenario = parse_scenario_list(flags.scenario);
        if (given("out")) config.out = flags.out;
        if (given("nth")) config.nth = flags.nth;
        if (given("verify_brute")) config.verify_brute = true;
        if (given("gamma_cap")) config.gamma_cap = flags.gamma_cap;
        if (given("param")) config.sweep.param = flags.param;
        if (given("from")) config.sweep.from = flags.from;
        if (given("to")) config.sweep.to = flags.to;
        if (given("steps")) config.sweep.steps = flags.steps;

        if (flags.dump_config) {
            out << to_json(config).dump(2) << "\n";
            return 0;
        }

        try {
            if (config.command == "simulate") return cmd_simulate(config, out);
            if (config.command == "optimal") return cmd_optimal(config, out);
            if (config.command == "compare") return cmd_compare(config, out);
            return cmd_sweep(config, out);
        } catch (const ModelError& e) {
            throw ConfigError(e.what());
        } catch (const ExprError& e) {
            throw ConfigError(e.what());
        } catch (const CriterionError& e) {
            throw ConfigError(e.what());
        }
    } catch (const ConfigError& e) {
        err << "lbsim: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "lbsim: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace lbsim::cli
