#include "cjsim/scenario.hpp"

#include <cmath>

namespace cjsim {

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw ConfigError(what);
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

} // namespace

void ScenarioConfig::validate() const
{
    require(n >= 1, "n must be >= 1");
    require(m >= 0, "m must be >= 0");
    require(std::isfinite(gamma_r) && gamma_r > 0.0, "gamma_r must be > 0");
    require(std::isfinite(gamma_e) && gamma_e > 0.0, "gamma_e must be > 0");
    require(is_probability(eps_s), "eps_s must lie in [0, 1]");
    require(is_probability(eps_t), "eps_t must lie in [0, 1]");
    require(std::isfinite(es) && es > 0.0, "es must be > 0");
    require(std::isfinite(n0) && n0 >= 0.0, "n0 must be >= 0");
    require(coherence_len >= 1, "coherence_len must be >= 1");
}

std::string_view to_string(NoiseMode mode) noexcept
{
    return mode == NoiseMode::exact ? "exact" : "interference-limited";
}

NoiseMode parse_noise_mode(std::string_view text)
{
    if (text == "exact")
        return NoiseMode::exact;
    if (text == "interference-limited" || text == "interference_limited")
        return NoiseMode::interference_limited;
    throw ConfigError("unknown noise mode '" + std::string(text) + "'");
}

} // namespace cjsim
