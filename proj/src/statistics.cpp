#include "cjsim/statistics.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>

namespace cjsim::stats {

double Proportion::standard_error() const noexcept
{
    if (trials == 0)
        return 0.0;
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

Proportion wilson(std::uint64_t successes, std::uint64_t trials, double z)
{
    if (successes > trials)
        throw std::invalid_argument("successes exceed trials");
    Proportion out;
    out.successes = successes;
    out.trials = trials;
    if (trials == 0) {
        out.ci_hi = 1.0;
        return out;
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
    out.p = p;
    // Rounding can push the Wilson bounds past the point estimate at p = 0 or 1.
    out.ci_lo = successes == 0 ? 0.0 : std::min(p, std::max(0.0, centre - half));
    out.ci_hi = successes == trials ? 1.0 : std::max(p, std::min(1.0, centre + half));
    return out;
}

double jain_index(std::span<const std::uint64_t> counts)
{
    double sum = 0.0;
    double sum_sq = 0.0;
    for (auto c : counts) {
        const double x = static_cast<double>(c);
        sum += x;
        sum_sq += x * x;
    }
    if (sum_sq == 0.0)
        return 1.0;
    return sum * sum / (static_cast<double>(counts.size()) * sum_sq);
}

double entropy(std::span<const std::uint64_t> counts)
{
    double total = 0.0;
    for (auto c : counts)
        total += static_cast<double>(c);
    if (total == 0.0)
        return 0.0;
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0)
            continue;
        const double q = static_cast<double>(c) / total;
        h -= q * std::log(q);
    }
    return h;
}

ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts)
{
    ChiSquareResult r;
    if (counts.size() < 2)
        return r;
    double total = 0.0;
    for (auto c : counts)
        total += static_cast<double>(c);
    if (total == 0.0)
        return r;
    const double expected = total / static_cast<double>(counts.size());
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        r.statistic += d * d / expected;
    }
    r.dof = static_cast<int>(counts.size()) - 1;
    const boost::math::chi_squared dist(r.dof);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

} // namespace cjsim::stats
