#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cjsim/protocol_engine.hpp"
#include "cjsim/scenario.hpp"
#include "cjsim/statistics.hpp"

namespace cjsim {

enum class SamplingMode {
    /// One fading block carries both hops.
    shared_realization,
    /// Each hop sees its own block, making the legs independent.
    independent_legs,
};

std::string_view to_string(SamplingMode mode) noexcept;
SamplingMode parse_sampling_mode(std::string_view text);

/// Raw event counts; merging is plain integer addition.
struct OutageCounts {
    std::uint64_t trials = 0;
    std::uint64_t t_hop1 = 0;
    std::uint64_t t_hop2 = 0;
    std::uint64_t t_e2e = 0;
    std::uint64_t s_hop1 = 0;
    std::uint64_t s_hop2 = 0;
    std::uint64_t s_e2e = 0;
    std::uint64_t s_both = 0;            ///< secrecy outage on both hops
    std::uint64_t eve_hop1_hits = 0;     ///< (trial, eavesdropper) hop-1 intercepts
    std::uint64_t eve_hop1_chances = 0;  ///< trials * m
    std::uint64_t jammers_hop1 = 0;
    std::uint64_t jammers_hop1_sq = 0;
    std::uint64_t jammers_hop2 = 0;
    std::uint64_t jammers_hop2_sq = 0;

    OutageCounts& operator+=(const OutageCounts& other) noexcept;
    friend bool operator==(const OutageCounts&, const OutageCounts&) = default;
};

/// Outage frequencies for one (config, protocol, seed) over a trial range.
struct OutageEstimate {
    ScenarioConfig config;
    ProtocolChoice protocol;
    double tau = 0.0;
    SamplingMode mode = SamplingMode::shared_realization;
    std::uint64_t seed = 0;
    std::uint64_t first_trial = 0;
    std::uint64_t end_trial = 0;
    OutageCounts counts;

    stats::Proportion p_t_hop1() const { return stats::wilson(counts.t_hop1, counts.trials); }
    stats::Proportion p_t_hop2() const { return stats::wilson(counts.t_hop2, counts.trials); }
    stats::Proportion p_t_e2e() const { return stats::wilson(counts.t_e2e, counts.trials); }
    stats::Proportion p_s_hop1() const { return stats::wilson(counts.s_hop1, counts.trials); }
    stats::Proportion p_s_hop2() const { return stats::wilson(counts.s_hop2, counts.trials); }
    stats::Proportion p_s_e2e() const { return stats::wilson(counts.s_e2e, counts.trials); }
    /// Single-eavesdropper hop-1 intercept rate, pooled over eavesdroppers.
    stats::Proportion p_eve_single_hop1() const
    {
        return stats::wilson(counts.eve_hop1_hits, counts.eve_hop1_chances);
    }

    double mean_jammers_hop1() const noexcept;
    /// Standard error of mean_jammers_hop1.
    double mean_jammers_hop1_se() const noexcept;
    double mean_jammers_hop2() const noexcept;

    /// Phi coefficient between hop-1 and hop-2 secrecy outage; 0 when either
    /// event is degenerate.
    double secrecy_hop_correlation() const noexcept;
};

struct EstimateOptions {
    SamplingMode mode = SamplingMode::shared_realization;
    unsigned workers = 1;
};

/// Simulates trials [first, end) with tau already resolved.  Trial t draws
/// from substreams keyed by (seed, t) only.
OutageEstimate estimate_trial_range(const ScenarioConfig& config, const ProtocolChoice& protocol,
                                    double tau, SamplingMode mode, std::uint64_t seed,
                                    std::uint64_t first, std::uint64_t end);

/// Resolves tau (throwing InfeasibleConfiguration before any trial runs),
/// splits [0, trials) over options.workers threads and merges the parts.
OutageEstimate estimate_outage(const ScenarioConfig& config, const ProtocolChoice& protocol,
                               std::uint64_t trials, std::uint64_t seed,
                               const EstimateOptions& options = {});

/// Pools estimates over disjoint trial ranges of one run; throws ConfigError
/// on mismatched runs or overlapping ranges.  Order-independent.
OutageEstimate merge_estimates(std::span<const OutageEstimate> parts);

struct ToleranceResult {
    int m = 0;                        ///< largest tolerable eavesdropper count
    bool violated_at_one = false;     ///< even m = 1 exceeds the budget
    bool capped = false;              ///< m_cap itself satisfies the budget
    double tau = 0.0;
    /// (m, p_s_e2e) for every count the search evaluated, in order.
    std::vector<std::pair<int, stats::Proportion>> evaluations;
};

/**
 * Largest m <= m_cap whose secrecy outage CI upper bound stays within eps_s.
 *
 * tau is resolved once from config (with m raised to 1 if zero) and held
 * fixed while m varies.  Eavesdropper draws are appended per eavesdropper,
 * so with a common seed the outage count is monotone in m and the
 * doubling-then-bisection search agrees with a linear scan.
 */
ToleranceResult tolerance_search(const ScenarioConfig& config, const ProtocolChoice& protocol,
                                 double eps_s, std::uint64_t trials, int m_cap,
                                 std::uint64_t seed, const EstimateOptions& options = {});

struct LoadBalanceStats {
    std::vector<std::uint64_t> selection_counts;
    double jain_index = 1.0;
    double entropy = 0.0;
    stats::ChiSquareResult uniformity;
    std::uint64_t slots = 0;
    std::uint64_t epochs = 0;
    int coherence_len = 1;
    /// Epochs in which the selected relay changed at least once.
    std::uint64_t epochs_with_switch = 0;
};

/// Relay reselected every slot; the channel is redrawn every coherence_len
/// slots.
LoadBalanceStats load_balance(const ScenarioConfig& config, const ProtocolChoice& protocol,
                              std::uint64_t slots, std::uint64_t seed);

} // namespace cjsim
