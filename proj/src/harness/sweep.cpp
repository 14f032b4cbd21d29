#include "cjsim/harness/sweep.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace cjsim::harness {

std::string_view to_string(SweepParameter p) noexcept
{
    switch (p) {
    case SweepParameter::n:
        return "n";
    case SweepParameter::m:
        return "m";
    case SweepParameter::gamma_r:
        return "gamma_r";
    case SweepParameter::gamma_e:
        return "gamma_e";
    case SweepParameter::eps_s:
        return "eps_s";
    case SweepParameter::eps_t:
        return "eps_t";
    case SweepParameter::tau:
        return "tau";
    }
    return "unknown";
}

SweepParameter parse_sweep_parameter(std::string_view text)
{
    for (auto p : {SweepParameter::n, SweepParameter::m, SweepParameter::gamma_r,
                   SweepParameter::gamma_e, SweepParameter::eps_s, SweepParameter::eps_t,
                   SweepParameter::tau})
        if (text == to_string(p))
            return p;
    if (text == "gamma-r")
        return SweepParameter::gamma_r;
    if (text == "gamma-e")
        return SweepParameter::gamma_e;
    if (text == "eps-s")
        return SweepParameter::eps_s;
    if (text == "eps-t")
        return SweepParameter::eps_t;
    throw ConfigError("cannot sweep '" + std::string(text) + "'");
}

SweepOutputs parse_sweep_outputs(std::string_view text)
{
    if (text == "bounds")
        return {true, false};
    if (text == "simulation")
        return {false, true};
    if (text == "both")
        return {true, true};
    throw ConfigError("outputs must be bounds, simulation or both");
}

std::vector<double> make_grid(double from, double to, double step)
{
    if (!(step > 0.0) || !(to >= from) || !std::isfinite(from) || !std::isfinite(to))
        throw ConfigError("grid needs finite from <= to and step > 0");
    std::vector<double> out;
    const double slack = step * 1e-9;
    for (long long k = 0;; ++k) {
        const double v = from + static_cast<double>(k) * step;
        if (v > to + slack)
            break;
        out.push_back(v);
        if (out.size() > 1000000)
            throw ConfigError("grid has more than 10^6 points");
    }
    return out;
}

std::vector<double> parse_value_list(std::string_view text)
{
    std::vector<double> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad sweep value '" + item + "'");
        }
        if (used != item.size())
            throw ConfigError("bad sweep value '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw ConfigError("sweep needs at least one value");
    return out;
}

namespace {

int as_count(double v, const char* what)
{
    if (std::floor(v) != v || std::abs(v) > 1e9)
        throw ConfigError(std::string(what) + " must be an integer");
    return static_cast<int>(v);
}

RunSettings apply_value(RunSettings s, SweepParameter p, double v)
{
    switch (p) {
    case SweepParameter::n:
        s.config.n = as_count(v, "n");
        break;
    case SweepParameter::m:
        s.config.m = as_count(v, "m");
        break;
    case SweepParameter::gamma_r:
        s.config.gamma_r = v;
        break;
    case SweepParameter::gamma_e:
        s.config.gamma_e = v;
        break;
    case SweepParameter::eps_s:
        s.config.eps_s = v;
        break;
    case SweepParameter::eps_t:
        s.config.eps_t = v;
        break;
    case SweepParameter::tau:
        if (!(v >= 0.0))
            throw ConfigError("tau must be >= 0");
        s.protocol.tau_policy = TauPolicy::manual;
        s.protocol.manual_tau = v;
        break;
    }
    s.config.validate();
    return s;
}

ResultRow run_row(const SweepSpec& spec, double value)
{
    ResultRow row;
    row.swept_value = value;
    RunSettings s;
    try {
        s = apply_value(spec.base, spec.parameter, value);
    } catch (const ConfigError& e) {
        row.status = std::string("invalid: ") + e.what();
        return row;
    }
    const auto& c = s.config;
    if (spec.outputs.bounds) {
        row.bounds = bounds::make_bound_report(c.n, c.m, c.gamma_r, c.gamma_e, c.eps_s, c.eps_t);
        if (row.bounds->tau_interval_defined && !row.bounds->tau_interval.feasible())
            row.status = "infeasible: " + row.bounds->tau_interval.describe();
    }
    if (spec.outputs.simulation) {
        try {
            row.simulation = estimate_outage(c, s.protocol, s.trials, s.seed,
                                             {.mode = s.mode, .workers = spec.workers});
        } catch (const InfeasibleConfiguration& e) {
            row.status = std::string("infeasible: ") + e.what();
        } catch (const ConfigError& e) {
            row.status = std::string("invalid: ") + e.what();
        }
    }
    if (spec.load_balance) {
        try {
            row.jain_index = load_balance(c, s.protocol, s.trials, s.seed).jain_index;
        } catch (const ConfigError& e) {
            row.status = std::string("invalid: ") + e.what();
        }
    }
    return row;
}

std::string csv_cell(double v) { return format_number(v); }

std::string csv_escape(const std::string& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + '"';
}

} // namespace

std::vector<ResultRow> run_sweep(const SweepSpec& spec)
{
    if (spec.values.empty())
        throw ConfigError("sweep needs at least one value");
    std::vector<ResultRow> rows(spec.values.size());
    if (!spec.parallel_rows) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            rows[i] = run_row(spec, spec.values[i]);
        return rows;
    }
    std::vector<std::exception_ptr> errors(rows.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < rows.size(); ++i)
            pool.emplace_back([&, i] {
                try {
                    rows[i] = run_row(spec, spec.values[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return rows;
}

const std::vector<std::string>& csv_columns()
{
    static const std::vector<std::string> columns = [] {
        std::vector<std::string> c = {"swept_value", "m_max_t1", "m_max_t3", "tau_min",
                                      "tau_max",     "feasible", "tau"};
        for (const char* p : {"p_t_hop1", "p_t_hop2", "p_t_e2e", "p_s_hop1", "p_s_hop2",
                              "p_s_e2e", "p_eve_single_hop1"}) {
            c.emplace_back(p);
            c.emplace_back(std::string(p) + "_ci_lo");
            c.emplace_back(std::string(p) + "_ci_hi");
        }
        c.emplace_back("jain_index");
        c.emplace_back("status");
        return c;
    }();
    return columns;
}

std::string csv_header()
{
    std::string out;
    for (const auto& c : csv_columns()) {
        if (!out.empty())
            out += ',';
        out += c;
    }
    return out;
}

std::string csv_row(const ResultRow& row)
{
    std::vector<std::string> cells;
    cells.push_back(csv_cell(row.swept_value));
    if (row.bounds) {
        const auto& b = *row.bounds;
        cells.push_back(std::to_string(b.theorem1.floored));
        cells.push_back(std::to_string(b.theorem3.floored));
        if (b.tau_interval_defined) {
            cells.push_back(csv_cell(b.tau_interval.tau_min));
            cells.push_back(csv_cell(b.tau_interval.tau_max));
            cells.push_back(b.tau_interval.feasible() ? "true" : "false");
        } else {
            cells.insert(cells.end(), 3, "");
        }
    } else {
        cells.insert(cells.end(), 5, "");
    }
    if (row.simulation) {
        const auto& e = *row.simulation;
        cells.push_back(csv_cell(e.tau));
        for (const auto& p : {e.p_t_hop1(), e.p_t_hop2(), e.p_t_e2e(), e.p_s_hop1(), e.p_s_hop2(),
                              e.p_s_e2e(), e.p_eve_single_hop1()}) {
            cells.push_back(csv_cell(p.p));
            cells.push_back(csv_cell(p.ci_lo));
            cells.push_back(csv_cell(p.ci_hi));
        }
    } else {
        cells.insert(cells.end(), 1 + 7 * 3, "");
    }
    cells.push_back(row.jain_index ? csv_cell(*row.jain_index) : "");
    cells.push_back(csv_escape(row.status));

    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            out += ',';
        out += cells[i];
    }
    return out;
}

void append_csv(const std::string& path, const std::vector<ResultRow>& rows)
{
    bool need_header = true;
    {
        std::ifstream existing(path);
        std::string first;
        if (existing && std::getline(existing, first) && !first.empty()) {
            if (first != csv_header())
                throw ConfigError("existing CSV '" + path + "' has a different header");
            need_header = false;
        }
    }
    std::ofstream out(path, std::ios::app);
    if (!out)
        throw ConfigError("cannot open '" + path + "' for writing");
    if (need_header)
        out << csv_header() << '\n';
    for (const auto& r : rows)
        out << csv_row(r) << '\n';
}

Json to_json(const ResultRow& row)
{
    Json j;
    j["swept_value"] = row.swept_value;
    j["bounds"] = row.bounds ? to_json(*row.bounds) : Json();
    j["simulation"] = row.simulation ? to_json(*row.simulation) : Json();
    j["jain_index"] = row.jain_index ? Json(*row.jain_index) : Json();
    j["status"] = row.status;
    return j;
}

} // namespace cjsim::harness
