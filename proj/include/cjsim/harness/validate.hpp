#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cjsim::harness {

struct ValidationOptions {
    bool quick = false;  ///< 10x fewer samples and wider acceptance bands
    std::uint64_t seed = 20240917;
    /// Evaluates the intercept oracle at this gamma_e instead of the
    /// simulated one; used to confirm the suite can fail.
    std::optional<double> inject_gamma_e;
};

struct ValidationCheck {
    std::string name;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;  ///< allowed |observed - expected|
    bool passed = false;
};

/// Oracle identities behind the secrecy and reliability derivations: the
/// exponential MGF, the binomial jammer count, the exact intercept
/// probability, and two-leg combining under independent legs.
std::vector<ValidationCheck> run_validation(const ValidationOptions& options);

void print_checks(std::ostream& out, const std::vector<ValidationCheck>& checks);

} // namespace cjsim::harness
