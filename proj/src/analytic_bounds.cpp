#include "cjsim/analytic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cjsim::bounds {

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

void require_probability(double p, const char* what)
{
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0, what);
}

Tolerance make_tolerance(double bound)
{
    Tolerance t;
    t.bound = bound;
    if (!(bound > 0.0))
        t.floored = 0;
    else if (bound >= 9.0e18)
        t.floored = std::numeric_limits<long long>::max();
    else
        t.floored = static_cast<long long>(std::floor(bound));
    return t;
}

// (1 - sqrt(1 - eps_s)) * (1 + gamma_e)^exponent, computed in log space so
// large exponents saturate to +inf instead of overflowing mid-expression.
double tolerance_bound(double eps_s, double gamma_e, double exponent)
{
    const double budget = per_leg_budget(eps_s);
    if (budget == 0.0)
        return 0.0;
    return std::exp(std::log(budget) + exponent * std::log1p(gamma_e));
}

} // namespace

double per_leg_budget(double eps)
{
    require_probability(eps, "eps must lie in [0, 1]");
    return 1.0 - std::sqrt(1.0 - eps);
}

double combine_legs(double p1, double p2)
{
    require_probability(p1, "p1 must lie in [0, 1]");
    require_probability(p2, "p2 must lie in [0, 1]");
    return 1.0 - (1.0 - p1) * (1.0 - p2);
}

double expected_jammers(int n, double tau)
{
    require(n >= 1, "n must be >= 1");
    require(tau >= 0.0, "tau must be >= 0");
    return (n - 1) * -std::expm1(-tau);
}

double reliability_leg_bound(int n, double gamma_r, double tau)
{
    require(gamma_r > 0.0, "gamma_r must be > 0");
    const double jammers = expected_jammers(n, tau);
    if (jammers == 0.0 || tau == 0.0)
        return 0.0;
    return -std::expm1(-gamma_r * jammers * tau);
}

double secrecy_leg_bound(int n, int m, double gamma_e, double tau)
{
    require(m >= 0, "m must be >= 0");
    require(gamma_e > 0.0, "gamma_e must be > 0");
    return m * std::exp(-expected_jammers(n, tau) * std::log1p(gamma_e));
}

double eve_intercept_exact(int n, double gamma_e, double tau)
{
    require(n >= 1, "n must be >= 1");
    require(gamma_e > 0.0, "gamma_e must be > 0");
    require(tau >= 0.0, "tau must be >= 0");
    const double silent = std::exp(-tau);
    const double base = silent + (1.0 - silent) / (1.0 + gamma_e);
    return std::pow(base, n - 1);
}

Tolerance theorem1_m_max(int n, double gamma_r, double gamma_e, double eps_s)
{
    require(n >= 1, "n must be >= 1");
    require(gamma_r > 0.0 && gamma_e > 0.0, "thresholds must be > 0");
    const double exponent = std::sqrt(n * std::log(static_cast<double>(n)) / (32.0 * gamma_r));
    return make_tolerance(tolerance_bound(eps_s, gamma_e, exponent));
}

Tolerance theorem3_m_max(int n, double gamma_r, double gamma_e, double eps_s, double eps_t)
{
    require(n >= 1, "n must be >= 1");
    require(gamma_r > 0.0 && gamma_e > 0.0, "thresholds must be > 0");
    require_probability(eps_t, "eps_t must lie in [0, 1]");
    const double exponent = std::sqrt(-(n - 1) * std::log1p(-eps_t) / (2.0 * gamma_r));
    return make_tolerance(tolerance_bound(eps_s, gamma_e, exponent));
}

std::string_view to_string(TauFeasibility f) noexcept
{
    switch (f) {
    case TauFeasibility::feasible:
        return "feasible";
    case TauFeasibility::secrecy_unreachable:
        return "secrecy_unreachable";
    case TauFeasibility::empty_interval:
        return "empty_interval";
    }
    return "unknown";
}

std::string TauInterval::describe() const
{
    std::ostringstream out;
    out.precision(6);
    switch (status) {
    case TauFeasibility::feasible:
        out << "tau in [" << tau_min << ", " << tau_max << "]";
        break;
    case TauFeasibility::secrecy_unreachable:
        out << "no tau meets the secrecy budget: bracket 1 + ln(b/m)/((n-1) ln(1+gamma_e)) = "
            << secrecy_bracket << " <= 0";
        break;
    case TauFeasibility::empty_interval:
        out << "tau_min = " << tau_min << " exceeds tau_max = " << tau_max;
        break;
    }
    return out.str();
}

TauInterval theorem2_tau_range(int n, double m, double gamma_r, double gamma_e, double eps_s,
                               double eps_t)
{
    require(n >= 2, "the tau interval needs n >= 2");
    require(gamma_r > 0.0 && gamma_e > 0.0, "thresholds must be > 0");
    require(!std::isnan(m), "m must be a number");
    require_probability(eps_s, "eps_s must lie in [0, 1]");
    require_probability(eps_t, "eps_t must lie in [0, 1]");

    TauInterval out;
    out.tau_max = std::sqrt(-std::log1p(-eps_t) / (2.0 * gamma_r * (n - 1)));

    if (m <= 0.0) {
        out.secrecy_bracket = std::numeric_limits<double>::infinity();
        out.tau_min = 0.0;
    } else {
        const double budget = per_leg_budget(eps_s);
        out.secrecy_bracket = 1.0 + std::log(budget / m) / ((n - 1) * std::log1p(gamma_e));
        if (!(out.secrecy_bracket > 0.0)) {
            out.status = TauFeasibility::secrecy_unreachable;
            out.tau_min = std::numeric_limits<double>::infinity();
            return out;
        }
        out.tau_min = std::max(0.0, -std::log(out.secrecy_bracket));
    }
    if (out.tau_min > out.tau_max)
        out.status = TauFeasibility::empty_interval;
    return out;
}

BoundReport make_bound_report(int n, int m, double gamma_r, double gamma_e, double eps_s,
                              double eps_t)
{
    BoundReport r;
    r.n = n;
    r.m = m;
    r.gamma_r = gamma_r;
    r.gamma_e = gamma_e;
    r.eps_s = eps_s;
    r.eps_t = eps_t;

    r.theorem1 = theorem1_m_max(n, gamma_r, gamma_e, eps_s);
    r.theorem3 = theorem3_m_max(n, gamma_r, gamma_e, eps_s, eps_t);
    r.per_leg_budget_s = per_leg_budget(eps_s);
    r.per_leg_budget_t = per_leg_budget(eps_t);

    r.tau_interval_defined = n >= 2;
    if (r.tau_interval_defined) {
        r.tau_interval = theorem2_tau_range(n, m, gamma_r, gamma_e, eps_s, eps_t);
        if (std::isfinite(r.tau_interval.tau_max))
            r.tau_eval = r.tau_interval.tau_max;
    }
    r.expected_jammers = expected_jammers(n, r.tau_eval);
    r.reliability_leg = reliability_leg_bound(n, gamma_r, r.tau_eval);
    r.secrecy_leg = secrecy_leg_bound(n, m, gamma_e, r.tau_eval);
    r.secrecy_leg_vacuous = is_vacuous(r.secrecy_leg);
    r.eve_intercept_exact = eve_intercept_exact(n, gamma_e, r.tau_eval);
    return r;
}

} // namespace cjsim::bounds
