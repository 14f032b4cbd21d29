#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cjsim {

enum class NoiseMode {
    exact,                 ///< denominator keeps the N0/2 term
    interference_limited,  ///< thermal noise dropped
};

/// Invalid parameter values or malformed input.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configuration whose jamming threshold cannot be resolved, e.g. an
/// empty admissible tau interval.
class InfeasibleConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters of one source / n relays / destination / m eavesdroppers
/// scenario.  All quantities are dimensionless and path loss is equal
/// between every pair of nodes.
struct ScenarioConfig {
    int n = 10;               ///< candidate relays
    int m = 1;                ///< eavesdroppers
    double gamma_r = 1.0;     ///< legitimate decoding threshold
    double gamma_e = 1.0;     ///< eavesdropper intercept threshold
    double eps_s = 0.1;       ///< secrecy outage budget
    double eps_t = 0.1;       ///< transmission outage budget
    double es = 1.0;          ///< per-node transmit power
    double n0 = 0.1;          ///< noise level; SINR uses N0/2
    NoiseMode noise_mode = NoiseMode::exact;
    int coherence_len = 1;    ///< slots per channel epoch

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;

    /// Noise term actually used in SINR denominators.
    double noise_term() const noexcept
    {
        return noise_mode == NoiseMode::exact ? n0 / 2.0 : 0.0;
    }

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

std::string_view to_string(NoiseMode mode) noexcept;
NoiseMode parse_noise_mode(std::string_view text);

} // namespace cjsim
