#pragma once

#include <string_view>
#include <vector>

#include "cjsim/channel_model.hpp"
#include "cjsim/random_stream.hpp"
#include "cjsim/scenario.hpp"

namespace cjsim {

enum class RelayPolicy {
    optimal_maxmin,  ///< Protocol 1: argmax_j min(|h_{S,Rj}|^2, |h_{Rj,D}|^2)
    random_uniform,  ///< Protocol 2: uniform random relay
};

enum class TauPolicy {
    protocol1_formula,  ///< sqrt(ln n / (8 n gamma_r))
    theorem2_max,
    theorem2_min,
    manual,
};

struct ProtocolChoice {
    RelayPolicy kind = RelayPolicy::optimal_maxmin;
    TauPolicy tau_policy = TauPolicy::protocol1_formula;
    double manual_tau = 0.0;  ///< used only with TauPolicy::manual

    friend bool operator==(const ProtocolChoice&, const ProtocolChoice&) = default;
};

std::string_view to_string(RelayPolicy kind) noexcept;
std::string_view to_string(TauPolicy policy) noexcept;
RelayPolicy parse_relay_policy(std::string_view text);
TauPolicy parse_tau_policy(std::string_view text);

/// Everything observed in one two-hop transmission.
struct TransmissionRecord {
    int selected_relay = 0;
    std::vector<int> jammers_hop1;  ///< jam while S -> R_{j*}
    std::vector<int> jammers_hop2;  ///< jam while R_{j*} -> D
    Sinr sinr_relay = 0.0;
    Sinr sinr_dest = 0.0;
    std::vector<Sinr> sinr_eves_hop1;
    std::vector<Sinr> sinr_eves_hop2;

    friend bool operator==(const TransmissionRecord&, const TransmissionRecord&) = default;
};

struct OutageFlags {
    bool t_out_hop1 = false;
    bool t_out_hop2 = false;
    bool s_out_hop1 = false;
    bool s_out_hop2 = false;
    bool t_out_e2e = false;
    bool s_out_e2e = false;
};

/// Lowest index wins ties.
int select_relay_optimal(const ChannelRealization& realization);

/// Max-min selection when the two legs see different fading blocks.
int select_relay_optimal(const ChannelRealization& hop1, const ChannelRealization& hop2);

int select_relay_random(int n, RandomStream& rng);

/// Receiver a jammer set is built against.
enum class HopReceiver { selected_relay, destination };

/// Indices j != selected whose gain toward the receiver is below tau.
std::vector<int> jammer_set(const ChannelRealization& realization, HopReceiver receiver,
                            int selected, double tau);

double tau_protocol1(int n, double gamma_r);

/// Resolves the protocol's tau policy for a scenario.  Throws
/// InfeasibleConfiguration when a Theorem-2 policy has no admissible tau and
/// ConfigError for a negative manual tau.
double resolve_tau(const ProtocolChoice& protocol, const ScenarioConfig& config);

/**
 * Runs one transmission S -> R_{j*} -> D.
 *
 * hop1 supplies the S->R and R->R_{j*} gains, hop2 the R->D gains; pass the
 * same block twice for a protocol-faithful run.  Eavesdropper i hears each
 * hop's transmitter as signal and that hop's jammers as interference, using
 * the eavesdropper links of the block that carries the hop.  selection_rng
 * is consumed only by the random policy.
 */
TransmissionRecord execute_two_hop(const ChannelRealization& hop1,
                                   const ChannelRealization& hop2,
                                   const ProtocolChoice& protocol, double tau,
                                   const ScenarioConfig& config, RandomStream& selection_rng);

inline TransmissionRecord execute_two_hop(const ChannelRealization& realization,
                                          const ProtocolChoice& protocol, double tau,
                                          const ScenarioConfig& config,
                                          RandomStream& selection_rng)
{
    return execute_two_hop(realization, realization, protocol, tau, config, selection_rng);
}

/// Decoding needs SINR > gamma_r; an eavesdropper intercepts at SINR >= gamma_e.
OutageFlags classify_outage(const TransmissionRecord& record, const ScenarioConfig& config);

} // namespace cjsim
