#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cjsim/analytic_bounds.hpp"
#include "cjsim/monte_carlo.hpp"
#include "cjsim/protocol_engine.hpp"
#include "cjsim/scenario.hpp"

namespace cjsim::harness {

using Json = nlohmann::ordered_json;

/// Compact-or-indented JSON text with every floating-point number written
/// to 17 significant digits.  Non-finite numbers become the strings "inf",
/// "-inf" and "nan".
std::string dump_json(const Json& value, int indent = 2);

/// Formats a double the same way dump_json does (no quoting).
std::string format_number(double value);

/// Everything a randomized command needs beyond the scenario itself.
struct RunSettings {
    ScenarioConfig config;
    ProtocolChoice protocol;
    SamplingMode mode = SamplingMode::shared_realization;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 20240917;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Applies a flat snake_case object (config-file format) on top of settings.
/// Unknown keys and ill-typed values throw ConfigError.
void apply_config_json(const Json& object, RunSettings& settings);

Json to_json(const ScenarioConfig& config);
Json to_json(const ProtocolChoice& protocol);
/// Flat object in config-file format; parsing it back reproduces settings.
Json to_json(const RunSettings& settings);
Json to_json(const stats::Proportion& p);
Json to_json(const bounds::BoundReport& report);
Json to_json(const OutageEstimate& estimate);
Json to_json(const LoadBalanceStats& stats);
Json to_json(const ToleranceResult& result);

} // namespace cjsim::harness
