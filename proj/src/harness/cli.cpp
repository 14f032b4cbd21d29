#include "cjsim/harness/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cjsim/harness/serialize.hpp"
#include "cjsim/harness/sweep.hpp"
#include "cjsim/harness/validate.hpp"

namespace cjsim::harness {

namespace {

/// Scenario flags shared by every subcommand.  Values are captured raw and
/// applied over the config file so flags win.
struct SharedFlags {
    int n = 0, m = 0, coherence_len = 0;
    double gamma_r = 0, gamma_e = 0, eps_s = 0, eps_t = 0, es = 0, n0 = 0, tau = 0;
    std::string noise_mode, protocol, tau_policy, sampling_mode, config_path, out_path;
    std::string format = "json";
    std::uint64_t trials = 0, seed = 0;
    unsigned workers = 1;

    std::vector<std::pair<std::string, CLI::Option*>> scenario_options;

    void attach(CLI::App& app)
    {
        auto add = [&](const char* name, auto& target, const char* help) {
            scenario_options.emplace_back(name, app.add_option(name, target, help));
        };
        add("--n", n, "candidate relays");
        add("--m", m, "eavesdroppers");
        add("--gamma-r", gamma_r, "legitimate SINR threshold");
        add("--gamma-e", gamma_e, "eavesdropper SINR threshold");
        add("--eps-s", eps_s, "secrecy outage budget");
        add("--eps-t", eps_t, "transmission outage budget");
        add("--es", es, "transmit power");
        add("--n0", n0, "noise level (SINR uses n0/2)");
        add("--noise-mode", noise_mode, "exact | interference-limited");
        add("--protocol", protocol, "optimal | random");
        add("--tau-policy", tau_policy, "protocol1 | theorem2-max | theorem2-min | manual");
        add("--tau", tau, "jamming threshold for --tau-policy manual");
        add("--trials", trials, "Monte Carlo trials (or slots)");
        add("--seed", seed, "master seed");
        add("--coherence-len", coherence_len, "slots per channel epoch");
        add("--sampling-mode", sampling_mode, "shared | independent-legs");
        app.add_option("--config", config_path, "flat JSON config file; flags override it");
        app.add_option("--out", out_path, "output file (CSV is appended)");
        app.add_option("--format", format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        app.add_option("--workers", workers, "Monte Carlo worker threads")
            ->check(CLI::Range(1u, 1024u));
    }

    bool given(const std::string& name) const
    {
        for (const auto& [key, opt] : scenario_options)
            if (key == name)
                return opt->count() > 0;
        return false;
    }

    RunSettings resolve(std::vector<std::string>* from_file = nullptr) const
    {
        RunSettings s;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in)
                throw ConfigError("cannot read config file '" + config_path + "'");
            Json j;
            try {
                j = Json::parse(in);
            } catch (const Json::parse_error& e) {
                throw ConfigError("config file '" + config_path + "': " + e.what());
            }
            apply_config_json(j, s);
            if (from_file && j.is_object())
                for (const auto& [key, v] : j.items())
                    from_file->push_back(key);
        }
        if (given("--n")) s.config.n = n;
        if (given("--m")) s.config.m = m;
        if (given("--gamma-r")) s.config.gamma_r = gamma_r;
        if (given("--gamma-e")) s.config.gamma_e = gamma_e;
        if (given("--eps-s")) s.config.eps_s = eps_s;
        if (given("--eps-t")) s.config.eps_t = eps_t;
        if (given("--es")) s.config.es = es;
        if (given("--n0")) s.config.n0 = n0;
        if (given("--noise-mode")) s.config.noise_mode = parse_noise_mode(noise_mode);
        if (given("--coherence-len")) s.config.coherence_len = coherence_len;
        if (given("--protocol")) s.protocol.kind = parse_relay_policy(protocol);
        if (given("--tau-policy")) s.protocol.tau_policy = parse_tau_policy(tau_policy);
        if (given("--tau")) {
            s.protocol.manual_tau = tau;
            if (!given("--tau-policy"))
                s.protocol.tau_policy = TauPolicy::manual;
        }
        if (given("--sampling-mode")) s.mode = parse_sampling_mode(sampling_mode);
        if (given("--trials")) {
            if (trials < 1)
                throw ConfigError("--trials must be >= 1");
            s.trials = trials;
        }
        if (given("--seed")) s.seed = seed;
        s.config.validate();
        return s;
    }
};

void emit_text(const std::string& text, const std::string& path, bool append, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, append ? std::ios::app : std::ios::trunc);
    if (!file)
        throw ConfigError("cannot open '" + path + "' for writing");
    file << text;
}

int cmd_bounds(const SharedFlags& f, std::ostream& out)
{
    std::vector<std::string> from_file;
    const RunSettings s = f.resolve(&from_file);
    auto present = [&](const char* flag, const char* key) {
        return f.given(flag) || std::find(from_file.begin(), from_file.end(), key) != from_file.end();
    };
    for (auto [flag, key] : {std::pair{"--n", "n"}, {"--m", "m"}, {"--gamma-r", "gamma_r"},
                             {"--gamma-e", "gamma_e"}, {"--eps-s", "eps_s"}, {"--eps-t", "eps_t"}})
        if (!present(flag, key))
            throw ConfigError(std::string("bounds requires ") + flag);

    const auto& c = s.config;
    const auto report = bounds::make_bound_report(c.n, c.m, c.gamma_r, c.gamma_e, c.eps_s, c.eps_t);
    if (f.format == "csv") {
        ResultRow row;
        row.swept_value = c.n;
        row.bounds = report;
        if (report.tau_interval_defined && !report.tau_interval.feasible())
            row.status = "infeasible: " + report.tau_interval.describe();
        if (f.out_path.empty())
            out << csv_header() << '\n' << csv_row(row) << '\n';
        else
            append_csv(f.out_path, {row});
    } else {
        Json j;
        j["command"] = "bounds";
        j["config"] = to_json(s);
        j["report"] = to_json(report);
        emit_text(dump_json(j) + "\n", f.out_path, false, out);
        if (!f.out_path.empty())
            out << dump_json(j) << '\n';
    }
    if (report.tau_interval_defined && !report.tau_interval.feasible())
        return kExitInfeasible;
    return kExitOk;
}

int cmd_simulate(const SharedFlags& f, bool with_load_balance, std::ostream& out)
{
    const RunSettings s = f.resolve();
    const auto est = estimate_outage(s.config, s.protocol, s.trials, s.seed,
                                     {.mode = s.mode, .workers = f.workers});
    Json j;
    j["command"] = "simulate";
    j["config"] = to_json(s);
    j["estimate"] = to_json(est);
    std::optional<LoadBalanceStats> lb;
    if (with_load_balance) {
        lb = load_balance(s.config, s.protocol, s.trials, s.seed);
        j["load_balance"] = to_json(*lb);
    }
    out << dump_json(j) << '\n';
    if (!f.out_path.empty()) {
        if (f.format == "csv") {
            ResultRow row;
            row.swept_value = s.config.n;
            row.simulation = est;
            if (lb)
                row.jain_index = lb->jain_index;
            append_csv(f.out_path, {row});
        } else {
            emit_text(dump_json(j) + "\n", f.out_path, false, out);
        }
    }
    return kExitOk;
}

struct SweepFlags {
    std::string parameter;
    std::string values;
    double from = 0, to = 0, step = 0;
    std::string outputs = "both";
    bool load_balance = false;
    bool parallel_rows = false;
    CLI::Option* from_opt = nullptr;
};

int cmd_sweep(const SharedFlags& f, const SweepFlags& sf, std::ostream& out)
{
    SweepSpec spec;
    spec.base = f.resolve();
    spec.parameter = parse_sweep_parameter(sf.parameter);
    spec.outputs = parse_sweep_outputs(sf.outputs);
    spec.load_balance = sf.load_balance;
    spec.parallel_rows = sf.parallel_rows;
    spec.workers = f.workers;
    if (!sf.values.empty())
        spec.values = parse_value_list(sf.values);
    else if (sf.from_opt && sf.from_opt->count())
        spec.values = make_grid(sf.from, sf.to, sf.step);
    else
        throw ConfigError("sweep needs --values or --from/--to/--step");

    const auto rows = run_sweep(spec);
    if (f.format == "csv") {
        if (f.out_path.empty()) {
            out << csv_header() << '\n';
            for (const auto& r : rows)
                out << csv_row(r) << '\n';
        } else {
            append_csv(f.out_path, rows);
        }
    } else {
        Json j;
        j["command"] = "sweep";
        j["config"] = to_json(spec.base);
        j["parameter"] = std::string(to_string(spec.parameter));
        Json arr = Json::array();
        for (const auto& r : rows)
            arr.push_back(to_json(r));
        j["rows"] = arr;
        emit_text(dump_json(j) + "\n", f.out_path, false, out);
    }
    return kExitOk;
}

int cmd_tolerance(const SharedFlags& f, int m_cap, std::ostream& out)
{
    const RunSettings s = f.resolve();
    const auto result = tolerance_search(s.config, s.protocol, s.config.eps_s, s.trials, m_cap,
                                         s.seed, {.mode = s.mode, .workers = f.workers});
    const auto& c = s.config;
    Json j;
    j["command"] = "tolerance";
    j["config"] = to_json(s);
    j["m_cap"] = m_cap;
    j["result"] = to_json(result);
    const auto t1 = bounds::theorem1_m_max(c.n, c.gamma_r, c.gamma_e, c.eps_s);
    const auto t3 = bounds::theorem3_m_max(c.n, c.gamma_r, c.gamma_e, c.eps_s, c.eps_t);
    j["theorem1_m_max"] = {{"bound", t1.bound}, {"floored", t1.floored}};
    j["theorem3_m_max"] = {{"bound", t3.bound}, {"floored", t3.floored}};
    emit_text(dump_json(j) + "\n", f.out_path, false, out);
    return kExitOk;
}

int cmd_validate(const SharedFlags& f, bool quick, std::optional<double> inject,
                 std::ostream& out)
{
    ValidationOptions opt;
    opt.quick = quick;
    opt.inject_gamma_e = inject;
    if (f.given("--seed"))
        opt.seed = f.seed;
    const auto checks = run_validation(opt);
    std::ostringstream text;
    print_checks(text, checks);
    const bool ok = std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.passed; });
    text << (ok ? "all checks passed" : "validation FAILED") << '\n';
    emit_text(text.str(), f.out_path, false, out);
    if (!f.out_path.empty())
        out << text.str();
    return ok ? kExitOk : kExitValidationFailed;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cooperative-jamming two-hop relay simulator and bound calculator", "cjsim"};
    app.require_subcommand(1);

    SharedFlags bounds_flags, sim_flags, sweep_flags, tol_flags, val_flags;

    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form tolerance bounds and tau interval");
    bounds_flags.attach(*bounds_cmd);

    bool sim_load_balance = false;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo outage estimate");
    sim_flags.attach(*sim_cmd);
    sim_cmd->add_flag("--load-balance", sim_load_balance,
                      "also report relay selection balance over --trials slots");

    SweepFlags sf;
    auto* sweep_cmd = app.add_subcommand("sweep", "bounds and simulation over a parameter grid");
    sweep_flags.attach(*sweep_cmd);
    sweep_cmd->add_option("--param", sf.parameter, "n | m | gamma_r | gamma_e | eps_s | eps_t | tau")
        ->required();
    sweep_cmd->add_option("--values", sf.values, "comma-separated values");
    sf.from_opt = sweep_cmd->add_option("--from", sf.from, "grid start");
    sweep_cmd->add_option("--to", sf.to, "grid end (inclusive)");
    sweep_cmd->add_option("--step", sf.step, "grid step");
    sweep_cmd->add_option("--outputs", sf.outputs, "bounds | simulation | both");
    sweep_cmd->add_flag("--load-balance", sf.load_balance, "add Jain index column");
    sweep_cmd->add_flag("--parallel-rows", sf.parallel_rows, "evaluate rows concurrently");

    int m_cap = 64;
    auto* tol_cmd = app.add_subcommand("tolerance", "empirical eavesdropper tolerance search");
    tol_flags.attach(*tol_cmd);
    tol_cmd->add_option("--m-cap", m_cap, "largest m considered")->check(CLI::PositiveNumber);

    bool quick = false;
    double inject = 0.0;
    auto* val_cmd = app.add_subcommand("validate", "run the oracle identity checks");
    val_flags.attach(*val_cmd);
    val_cmd->add_flag("--quick", quick, "reduced samples, wider tolerances");
    auto* inject_opt = val_cmd->add_option("--inject-gamma-e", inject,
                                           "evaluate the intercept oracle at a wrong gamma_e");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*bounds_cmd)
            return cmd_bounds(bounds_flags, out);
        if (*sim_cmd)
            return cmd_simulate(sim_flags, sim_load_balance, out);
        if (*sweep_cmd)
            return cmd_sweep(sweep_flags, sf, out);
        if (*tol_cmd)
            return cmd_tolerance(tol_flags, m_cap, out);
        if (*val_cmd)
            return cmd_validate(val_flags, quick,
                                inject_opt->count() ? std::optional<double>(inject) : std::nullopt,
                                out);
    } catch (const InfeasibleConfiguration& e) {
        err << "infeasible configuration: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace cjsim::harness
