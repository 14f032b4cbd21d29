#include "cjsim/harness/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace cjsim::harness {

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

void emit(const Json& v, int indent, int depth, std::string& out)
{
    const auto newline = [&](int d) {
        if (indent < 0)
            return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (v.type()) {
    case Json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (const auto& [key, item] : v.items()) {
            if (!first)
                out += ',';
            first = false;
            newline(depth + 1);
            out += Json(key).dump();
            out += indent < 0 ? ":" : ": ";
            emit(item, indent, depth + 1, out);
        }
        newline(depth);
        out += '}';
        return;
    }
    case Json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const auto& item : v) {
            if (!first)
                out += ',';
            first = false;
            newline(depth + 1);
            emit(item, indent, depth + 1, out);
        }
        newline(depth);
        out += ']';
        return;
    }
    case Json::value_t::number_float: {
        const double d = v.get<double>();
        if (std::isfinite(d))
            out += format_number(d);
        else
            out += '"' + format_number(d) + '"';
        return;
    }
    default:
        out += v.dump();
    }
}

Json number(double d)
{
    if (std::isfinite(d))
        return d;
    return format_number(d);
}

double as_number(const Json& v, const std::string& key)
{
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
    }
    throw ConfigError("config key '" + key + "' must be a number");
}

long long as_integer(const Json& v, const std::string& key)
{
    if (v.is_number_integer())
        return v.get<long long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::floor(d) == d && std::abs(d) < 9.0e15)
            return static_cast<long long>(d);
    }
    throw ConfigError("config key '" + key + "' must be an integer");
}

std::string as_string(const Json& v, const std::string& key)
{
    if (!v.is_string())
        throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

Json proportion_with_count(const stats::Proportion& p)
{
    Json j = to_json(p);
    j["count"] = p.successes;
    j["of"] = p.trials;
    return j;
}

} // namespace

std::string dump_json(const Json& value, int indent)
{
    std::string out;
    emit(value, indent, 0, out);
    return out;
}

void apply_config_json(const Json& object, RunSettings& s)
{
    if (!object.is_object())
        throw ConfigError("config must be a flat JSON object");
    for (const auto& [key, v] : object.items()) {
        if (key == "n")
            s.config.n = static_cast<int>(as_integer(v, key));
        else if (key == "m")
            s.config.m = static_cast<int>(as_integer(v, key));
        else if (key == "gamma_r")
            s.config.gamma_r = as_number(v, key);
        else if (key == "gamma_e")
            s.config.gamma_e = as_number(v, key);
        else if (key == "eps_s")
            s.config.eps_s = as_number(v, key);
        else if (key == "eps_t")
            s.config.eps_t = as_number(v, key);
        else if (key == "es")
            s.config.es = as_number(v, key);
        else if (key == "n0")
            s.config.n0 = as_number(v, key);
        else if (key == "noise_mode")
            s.config.noise_mode = parse_noise_mode(as_string(v, key));
        else if (key == "coherence_len")
            s.config.coherence_len = static_cast<int>(as_integer(v, key));
        else if (key == "protocol" || key == "kind")
            s.protocol.kind = parse_relay_policy(as_string(v, key));
        else if (key == "tau_policy")
            s.protocol.tau_policy = parse_tau_policy(as_string(v, key));
        else if (key == "tau")
            s.protocol.manual_tau = as_number(v, key);
        else if (key == "sampling_mode")
            s.mode = parse_sampling_mode(as_string(v, key));
        else if (key == "trials") {
            const auto t = as_integer(v, key);
            if (t < 1)
                throw ConfigError("trials must be >= 1");
            s.trials = static_cast<std::uint64_t>(t);
        } else if (key == "seed") {
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
                throw ConfigError("config key 'seed' must be a non-negative integer");
            s.seed = v.get<std::uint64_t>();
        } else
            throw ConfigError("unknown config key '" + key + "'");
    }
}

Json to_json(const ScenarioConfig& c)
{
    Json j;
    j["n"] = c.n;
    j["m"] = c.m;
    j["gamma_r"] = number(c.gamma_r);
    j["gamma_e"] = number(c.gamma_e);
    j["eps_s"] = number(c.eps_s);
    j["eps_t"] = number(c.eps_t);
    j["es"] = number(c.es);
    j["n0"] = number(c.n0);
    j["noise_mode"] = std::string(to_string(c.noise_mode));
    j["coherence_len"] = c.coherence_len;
    return j;
}

Json to_json(const ProtocolChoice& p)
{
    Json j;
    j["protocol"] = std::string(to_string(p.kind));
    j["tau_policy"] = std::string(to_string(p.tau_policy));
    j["tau"] = number(p.manual_tau);
    return j;
}

Json to_json(const RunSettings& s)
{
    Json j = to_json(s.config);
    const Json protocol = to_json(s.protocol);
    for (const auto& [key, v] : protocol.items())
        j[key] = v;
    j["sampling_mode"] = std::string(to_string(s.mode));
    j["trials"] = s.trials;
    j["seed"] = s.seed;
    return j;
}

Json to_json(const stats::Proportion& p)
{
    Json j;
    j["p"] = number(p.p);
    j["ci_lo"] = number(p.ci_lo);
    j["ci_hi"] = number(p.ci_hi);
    return j;
}

Json to_json(const bounds::BoundReport& r)
{
    Json j;
    j["inputs"] = {{"n", r.n},           {"m", r.m},
                   {"gamma_r", number(r.gamma_r)}, {"gamma_e", number(r.gamma_e)},
                   {"eps_s", number(r.eps_s)},     {"eps_t", number(r.eps_t)}};
    j["theorem1_m_max"] = {{"bound", number(r.theorem1.bound)}, {"floored", r.theorem1.floored}};
    j["theorem3_m_max"] = {{"bound", number(r.theorem3.bound)}, {"floored", r.theorem3.floored}};
    Json tau;
    tau["defined"] = r.tau_interval_defined;
    if (r.tau_interval_defined) {
        tau["status"] = std::string(bounds::to_string(r.tau_interval.status));
        tau["feasible"] = r.tau_interval.feasible();
        tau["tau_min"] = number(r.tau_interval.tau_min);
        tau["tau_max"] = number(r.tau_interval.tau_max);
        tau["secrecy_bracket"] = number(r.tau_interval.secrecy_bracket);
    }
    j["tau_interval"] = tau;
    j["per_leg_budget_t"] = number(r.per_leg_budget_t);
    j["per_leg_budget_s"] = number(r.per_leg_budget_s);
    j["tau_eval"] = number(r.tau_eval);
    j["expected_jammers"] = number(r.expected_jammers);
    j["reliability_leg_bound"] = number(r.reliability_leg);
    j["secrecy_leg_bound"] = number(r.secrecy_leg);
    j["secrecy_leg_vacuous"] = r.secrecy_leg_vacuous;
    j["oracle_eve_intercept_exact"] = number(r.eve_intercept_exact);
    return j;
}

Json to_json(const OutageEstimate& e)
{
    Json j;
    j["tau"] = number(e.tau);
    j["sampling_mode"] = std::string(to_string(e.mode));
    j["seed"] = e.seed;
    j["trials"] = e.counts.trials;
    j["p_t_hop1"] = proportion_with_count(e.p_t_hop1());
    j["p_t_hop2"] = proportion_with_count(e.p_t_hop2());
    j["p_t_e2e"] = proportion_with_count(e.p_t_e2e());
    j["p_s_hop1"] = proportion_with_count(e.p_s_hop1());
    j["p_s_hop2"] = proportion_with_count(e.p_s_hop2());
    j["p_s_e2e"] = proportion_with_count(e.p_s_e2e());
    j["p_eve_single_hop1"] = proportion_with_count(e.p_eve_single_hop1());
    j["mean_jammers_hop1"] = number(e.mean_jammers_hop1());
    j["mean_jammers_hop1_se"] = number(e.mean_jammers_hop1_se());
    j["mean_jammers_hop2"] = number(e.mean_jammers_hop2());
    j["secrecy_hop_correlation"] = number(e.secrecy_hop_correlation());
    return j;
}

Json to_json(const LoadBalanceStats& s)
{
    Json j;
    j["slots"] = s.slots;
    j["epochs"] = s.epochs;
    j["coherence_len"] = s.coherence_len;
    j["selection_counts"] = s.selection_counts;
    j["jain_index"] = number(s.jain_index);
    j["entropy_nats"] = number(s.entropy);
    j["chi_square"] = {{"statistic", number(s.uniformity.statistic)},
                       {"dof", s.uniformity.dof},
                       {"p_value", number(s.uniformity.p_value)}};
    j["epochs_with_switch"] = s.epochs_with_switch;
    return j;
}

Json to_json(const ToleranceResult& r)
{
    Json j;
    j["m_tolerated"] = r.m;
    j["violated_at_one"] = r.violated_at_one;
    j["capped"] = r.capped;
    j["tau"] = number(r.tau);
    Json evals = Json::array();
    for (const auto& [m, p] : r.evaluations) {
        evals.push_back(Json{{"m", m}, {"p_s_e2e", p.p}, {"ci_lo", p.ci_lo}, {"ci_hi", p.ci_hi}});
    }
    j["evaluations"] = evals;
    return j;
}

} // namespace cjsim::harness
