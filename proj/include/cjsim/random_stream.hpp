#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace cjsim {

/// Stateless 64-bit mixer (SplitMix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Substream domains. Draws for different purposes within one trial come
/// from disjoint streams so that, for example, adding eavesdroppers never
/// perturbs the relay-selection draw.
enum class StreamDomain : std::uint64_t {
    channel = 1,
    channel_second_hop = 2,
    selection = 3,
    epoch_channel = 4,
    slot_selection = 5,
    validation = 6,
};

/**
 * xoshiro256** generator whose state is a pure function of
 * (master seed, domain, counter).
 *
 * Streams are addressed by counter instead of being advanced from a shared
 * parent, so any partition of trial indices across workers reproduces the
 * same draws.  Satisfies UniformRandomBitGenerator.
 */
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) noexcept
    {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s = mix64(s);
            word = s;
        }
    }

    static RandomStream derive(std::uint64_t master_seed, StreamDomain domain,
                               std::uint64_t counter) noexcept
    {
        std::uint64_t key = mix64(master_seed);
        key = mix64(key ^ static_cast<std::uint64_t>(domain) * 0xd1b54a32d192ed03ULL);
        key = mix64(key ^ counter);
        return RandomStream(key);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double uniform() noexcept
    {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound); bound must be >= 1.
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        // Rejection on the top of the range keeps the draw exactly uniform.
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x = (*this)();
        while (x >= limit)
            x = (*this)();
        return x % bound;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace cjsim
