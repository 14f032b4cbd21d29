#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "cjsim/random_stream.hpp"
#include "cjsim/scenario.hpp"

namespace cjsim {

/// SINR value; +infinity when the denominator vanishes (no jammers and no
/// noise), which decodes above any finite threshold.
using Sinr = double;

inline constexpr Sinr kUnboundedSinr = std::numeric_limits<double>::infinity();

inline bool is_unbounded(Sinr value) noexcept { return value == kUnboundedSinr; }

/// One Exp(1) power-gain draw |h|^2 (Rayleigh fading, unit mean).
double sample_gain(RandomStream& rng) noexcept;

/**
 * Power gains |h_{A,B}|^2 of one quasi-static fading block.
 *
 * Relay-relay gains are reciprocal (one draw per unordered pair) because
 * jammers decide from pilots measured on the reverse link.  Eavesdropper
 * links are directional and shared by both hops of the block.
 */
class ChannelRealization {
public:
    ChannelRealization() = default;
    ChannelRealization(int relays, int eavesdroppers);

    int relays() const noexcept { return relays_; }
    int eavesdroppers() const noexcept { return eavesdroppers_; }

    double source_relay(int j) const { return source_relay_[idx(j)]; }
    double relay_dest(int j) const { return relay_dest_[idx(j)]; }
    double relay_relay(int j, int k) const;
    double source_dest() const noexcept { return source_dest_; }
    double source_eve(int i) const { return source_eve_[idx(i)]; }
    double relay_eve(int j, int i) const
    {
        return relay_eve_[idx(j) * static_cast<std::size_t>(eavesdroppers_) + idx(i)];
    }

    void set_source_relay(int j, double g) { source_relay_[idx(j)] = g; }
    void set_relay_dest(int j, double g) { relay_dest_[idx(j)] = g; }
    void set_relay_relay(int j, int k, double g);
    void set_source_dest(double g) noexcept { source_dest_ = g; }
    void set_source_eve(int i, double g) { source_eve_[idx(i)] = g; }
    void set_relay_eve(int j, int i, double g)
    {
        relay_eve_[idx(j) * static_cast<std::size_t>(eavesdroppers_) + idx(i)] = g;
    }

    /// Number of independent draws stored (reciprocal pairs counted once).
    std::size_t distinct_gains() const noexcept;

    friend bool operator==(const ChannelRealization&, const ChannelRealization&) = default;

private:
    static std::size_t idx(int i) { return static_cast<std::size_t>(i); }
    std::size_t pair_index(int j, int k) const;

    int relays_ = 0;
    int eavesdroppers_ = 0;
    std::vector<double> source_relay_;
    std::vector<double> relay_dest_;
    std::vector<double> relay_relay_;  // strict upper triangle, row-major
    double source_dest_ = 0.0;
    std::vector<double> source_eve_;
    std::vector<double> relay_eve_;    // [relay][eve]
};

/// Draws every gain of a fresh block.  Legitimate links are drawn first and
/// eavesdropper links last, one eavesdropper at a time, so a scenario with
/// more eavesdroppers extends rather than reshuffles a smaller one.
ChannelRealization sample_realization(const ScenarioConfig& config, RandomStream& rng);

/// E_s g / (E_s sum(jammers) + N0/2), with the noise term dropped in
/// interference-limited mode.
Sinr sinr(double signal_gain, std::span<const double> jammer_gains,
          const ScenarioConfig& config) noexcept;

} // namespace cjsim
