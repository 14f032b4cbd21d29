#pragma once

#include <cstdint>
#include <span>

namespace cjsim::stats {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

/// A proportion estimate with a Wilson score interval.
struct Proportion {
    double p = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;

    /// Binomial standard error sqrt(p(1-p)/trials).
    double standard_error() const noexcept;
};

Proportion wilson(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

/// (sum c)^2 / (n sum c^2); 1 for perfectly even counts, 1/n for a single
/// non-zero count.  Returns 1 when every count is zero.
double jain_index(std::span<const std::uint64_t> counts);

/// Shannon entropy (nats) of the empirical selection distribution.
double entropy(std::span<const std::uint64_t> counts);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Pearson goodness-of-fit test against the uniform distribution over the
/// count bins.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts);

} // namespace cjsim::stats
