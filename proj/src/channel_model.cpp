#include "cjsim/channel_model.hpp"

#include <cassert>
#include <cmath>
#include <utility>

namespace cjsim {

double sample_gain(RandomStream& rng) noexcept
{
    // Inversion on 1 - U keeps the argument of log in (0, 1].
    return -std::log1p(-rng.uniform());
}

ChannelRealization::ChannelRealization(int relays, int eavesdroppers)
    : relays_(relays),
      eavesdroppers_(eavesdroppers),
      source_relay_(idx(relays)),
      relay_dest_(idx(relays)),
      relay_relay_(idx(relays) * idx(relays > 0 ? relays - 1 : 0) / 2),
      source_eve_(idx(eavesdroppers)),
      relay_eve_(idx(relays) * idx(eavesdroppers))
{
    if (relays < 1 || eavesdroppers < 0)
        throw ConfigError("realization needs n >= 1 and m >= 0");
}

std::size_t ChannelRealization::pair_index(int j, int k) const
{
    assert(j != k);
    if (j > k)
        std::swap(j, k);
    // Rows 0..j-1 of the strict upper triangle hold sum_{r<j} (n-1-r) entries.
    const std::size_t n = idx(relays_);
    const std::size_t row = idx(j);
    return row * (2 * n - row - 1) / 2 + (idx(k) - row - 1);
}

double ChannelRealization::relay_relay(int j, int k) const
{
    return relay_relay_[pair_index(j, k)];
}

void ChannelRealization::set_relay_relay(int j, int k, double g)
{
    relay_relay_[pair_index(j, k)] = g;
}

std::size_t ChannelRealization::distinct_gains() const noexcept
{
    return source_relay_.size() + relay_dest_.size() + relay_relay_.size() + 1 +
           source_eve_.size() + relay_eve_.size();
}

ChannelRealization sample_realization(const ScenarioConfig& config, RandomStream& rng)
{
    ChannelRealization h(config.n, config.m);
    for (int j = 0; j < config.n; ++j)
        h.set_source_relay(j, sample_gain(rng));
    for (int j = 0; j < config.n; ++j)
        h.set_relay_dest(j, sample_gain(rng));
    for (int j = 0; j < config.n; ++j)
        for (int k = j + 1; k < config.n; ++k)
            h.set_relay_relay(j, k, sample_gain(rng));
    h.set_source_dest(sample_gain(rng));
    for (int i = 0; i < config.m; ++i) {
        h.set_source_eve(i, sample_gain(rng));
        for (int j = 0; j < config.n; ++j)
            h.set_relay_eve(j, i, sample_gain(rng));
    }
    return h;
}

Sinr sinr(double signal_gain, std::span<const double> jammer_gains,
          const ScenarioConfig& config) noexcept
{
    double interference = 0.0;
    for (double g : jammer_gains)
        interference += g;
    const double denominator = config.es * interference + config.noise_term();
    if (denominator <= 0.0)
        return kUnboundedSinr;
    return config.es * signal_gain / denominator;
}

} // namespace cjsim
