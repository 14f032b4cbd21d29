#include "cjsim/protocol_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cjsim/analytic_bounds.hpp"

namespace cjsim {

std::string_view to_string(RelayPolicy kind) noexcept
{
    return kind == RelayPolicy::optimal_maxmin ? "optimal" : "random";
}

std::string_view to_string(TauPolicy policy) noexcept
{
    switch (policy) {
    case TauPolicy::protocol1_formula:
        return "protocol1";
    case TauPolicy::theorem2_max:
        return "theorem2-max";
    case TauPolicy::theorem2_min:
        return "theorem2-min";
    case TauPolicy::manual:
        return "manual";
    }
    return "unknown";
}

RelayPolicy parse_relay_policy(std::string_view text)
{
    if (text == "optimal" || text == "optimal-maxmin" || text == "protocol1")
        return RelayPolicy::optimal_maxmin;
    if (text == "random" || text == "random-uniform" || text == "protocol2")
        return RelayPolicy::random_uniform;
    throw ConfigError("unknown protocol '" + std::string(text) + "'");
}

TauPolicy parse_tau_policy(std::string_view text)
{
    if (text == "protocol1" || text == "protocol1-formula")
        return TauPolicy::protocol1_formula;
    if (text == "theorem2-max")
        return TauPolicy::theorem2_max;
    if (text == "theorem2-min")
        return TauPolicy::theorem2_min;
    if (text == "manual")
        return TauPolicy::manual;
    throw ConfigError("unknown tau policy '" + std::string(text) + "'");
}

int select_relay_optimal(const ChannelRealization& realization)
{
    return select_relay_optimal(realization, realization);
}

int select_relay_optimal(const ChannelRealization& hop1, const ChannelRealization& hop2)
{
    int best = 0;
    double best_value = -1.0;
    for (int j = 0; j < hop1.relays(); ++j) {
        const double value = std::min(hop1.source_relay(j), hop2.relay_dest(j));
        if (value > best_value) {
            best_value = value;
            best = j;
        }
    }
    return best;
}

int select_relay_random(int n, RandomStream& rng)
{
    if (n < 1)
        throw ConfigError("n must be >= 1");
    return static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
}

std::vector<int> jammer_set(const ChannelRealization& realization, HopReceiver receiver,
                            int selected, double tau)
{
    std::vector<int> jammers;
    for (int j = 0; j < realization.relays(); ++j) {
        if (j == selected)
            continue;
        const double gain = receiver == HopReceiver::selected_relay
                                ? realization.relay_relay(j, selected)
                                : realization.relay_dest(j);
        if (gain < tau)
            jammers.push_back(j);
    }
    return jammers;
}

double tau_protocol1(int n, double gamma_r)
{
    if (n < 1 || !(gamma_r > 0.0))
        throw ConfigError("tau_protocol1 needs n >= 1 and gamma_r > 0");
    return std::sqrt(std::log(static_cast<double>(n)) / (8.0 * n * gamma_r));
}

double resolve_tau(const ProtocolChoice& protocol, const ScenarioConfig& config)
{
    switch (protocol.tau_policy) {
    case TauPolicy::protocol1_formula:
        return tau_protocol1(config.n, config.gamma_r);
    case TauPolicy::manual:
        if (!(protocol.manual_tau >= 0.0))
            throw ConfigError("manual tau must be >= 0");
        return protocol.manual_tau;
    case TauPolicy::theorem2_max:
    case TauPolicy::theorem2_min: {
        if (config.n < 2)
            throw InfeasibleConfiguration("theorem2 tau policies need n >= 2");
        const auto interval = bounds::theorem2_tau_range(config.n, config.m, config.gamma_r,
                                                         config.gamma_e, config.eps_s,
                                                         config.eps_t);
        if (!interval.feasible())
            throw InfeasibleConfiguration("theorem2 tau interval infeasible: " +
                                          interval.describe());
        const double tau = protocol.tau_policy == TauPolicy::theorem2_max ? interval.tau_max
                                                                          : interval.tau_min;
        if (!std::isfinite(tau))
            throw InfeasibleConfiguration("theorem2 tau is not finite (eps_t = 1?)");
        return tau;
    }
    }
    throw ConfigError("unknown tau policy");
}

namespace {

std::vector<double> gains_toward(const std::vector<int>& jammers, auto&& gain_of)
{
    std::vector<double> gains;
    gains.reserve(jammers.size());
    for (int j : jammers)
        gains.push_back(gain_of(j));
    return gains;
}

} // namespace

TransmissionRecord execute_two_hop(const ChannelRealization& hop1,
                                   const ChannelRealization& hop2,
                                   const ProtocolChoice& protocol, double tau,
                                   const ScenarioConfig& config, RandomStream& selection_rng)
{
    TransmissionRecord rec;
    rec.selected_relay = protocol.kind == RelayPolicy::optimal_maxmin
                             ? select_relay_optimal(hop1, hop2)
                             : select_relay_random(hop1.relays(), selection_rng);
    const int sel = rec.selected_relay;

    rec.jammers_hop1 = jammer_set(hop1, HopReceiver::selected_relay, sel, tau);
    rec.jammers_hop2 = jammer_set(hop2, HopReceiver::destination, sel, tau);

    const auto interference_relay =
        gains_toward(rec.jammers_hop1, [&](int j) { return hop1.relay_relay(j, sel); });
    rec.sinr_relay = sinr(hop1.source_relay(sel), interference_relay, config);

    const auto interference_dest =
        gains_toward(rec.jammers_hop2, [&](int j) { return hop2.relay_dest(j); });
    rec.sinr_dest = sinr(hop2.relay_dest(sel), interference_dest, config);

    const int m = hop1.eavesdroppers();
    rec.sinr_eves_hop1.resize(static_cast<std::size_t>(m));
    rec.sinr_eves_hop2.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const auto jam1 = gains_toward(rec.jammers_hop1, [&](int j) { return hop1.relay_eve(j, i); });
        rec.sinr_eves_hop1[static_cast<std::size_t>(i)] = sinr(hop1.source_eve(i), jam1, config);
        const auto jam2 = gains_toward(rec.jammers_hop2, [&](int j) { return hop2.relay_eve(j, i); });
        rec.sinr_eves_hop2[static_cast<std::size_t>(i)] = sinr(hop2.relay_eve(sel, i), jam2, config);
    }
    return rec;
}

OutageFlags classify_outage(const TransmissionRecord& record, const ScenarioConfig& config)
{
    const auto intercepted = [&](const std::vector<Sinr>& eves) {
        return std::any_of(eves.begin(), eves.end(),
                           [&](Sinr c) { return c >= config.gamma_e; });
    };
    OutageFlags f;
    f.t_out_hop1 = !(record.sinr_relay > config.gamma_r);
    f.t_out_hop2 = !(record.sinr_dest > config.gamma_r);
    f.s_out_hop1 = intercepted(record.sinr_eves_hop1);
    f.s_out_hop2 = intercepted(record.sinr_eves_hop2);
    f.t_out_e2e = f.t_out_hop1 || f.t_out_hop2;
    f.s_out_e2e = f.s_out_hop1 || f.s_out_hop2;
    return f;
}

} // namespace cjsim
