#pragma once

#include <string>
#include <string_view>

namespace cjsim::bounds {

// Closed-form tolerance bounds for the two relay protocols.  Logarithms are
// natural throughout.

/// Per-hop outage allowance b with 2b - b^2 = eps, i.e. 1 - sqrt(1 - eps).
double per_leg_budget(double eps);

/// Two independent legs: p1 + p2 - p1 p2.
double combine_legs(double p1, double p2);

/// Mean size of a jammer set, (n-1)(1 - e^{-tau}).
double expected_jammers(int n, double tau);

/// Per-hop transmission-outage bound 1 - exp(-gamma_r (n-1)(1-e^{-tau}) tau).
double reliability_leg_bound(int n, double gamma_r, double tau);

/// Union bound on per-hop secrecy outage with |jammers| replaced by its mean:
/// m (1/(1+gamma_e))^{(n-1)(1-e^{-tau})}.  Not clamped; values above 1 are
/// vacuous (see is_vacuous).
double secrecy_leg_bound(int n, int m, double gamma_e, double tau);

inline bool is_vacuous(double bound) noexcept { return bound > 1.0; }

/**
 * Exact single-eavesdropper intercept probability under interference-limited
 * SINR: E[(1/(1+gamma_e))^K] with K ~ Binomial(n-1, 1-e^{-tau}), which is
 * (e^{-tau} + (1-e^{-tau})/(1+gamma_e))^{n-1}.
 *
 * This is an oracle, not one of the published bounds; it sits above the
 * expectation-substituted value used in secrecy_leg_bound.
 */
double eve_intercept_exact(int n, double gamma_e, double tau);

/// A real-valued tolerance bound together with the tolerable integer count.
struct Tolerance {
    double bound = 0.0;
    long long floored = 0;  ///< floor(bound), clamped at 0
};

/// Protocol 1 (max-min relay): (1 - sqrt(1-eps_s)) (1+gamma_e)^{sqrt(n ln n / (32 gamma_r))}.
Tolerance theorem1_m_max(int n, double gamma_r, double gamma_e, double eps_s);

/// Protocol 2 (random relay):
/// (1 - sqrt(1-eps_s)) (1+gamma_e)^{sqrt(-(n-1) ln(1-eps_t) / (2 gamma_r))}.
Tolerance theorem3_m_max(int n, double gamma_r, double gamma_e, double eps_s, double eps_t);

enum class TauFeasibility {
    feasible,
    secrecy_unreachable,  ///< log argument of tau_min is <= 0: no tau suppresses m eavesdroppers
    empty_interval,       ///< tau_min > tau_max
};

std::string_view to_string(TauFeasibility f) noexcept;

/// Admissible jamming thresholds for Protocol 2.  tau_min is clamped at 0
/// when the secrecy constraint holds for every tau.
struct TauInterval {
    TauFeasibility status = TauFeasibility::feasible;
    double tau_min = 0.0;
    double tau_max = 0.0;
    double secrecy_bracket = 1.0;  ///< 1 + ln(b/m) / ((n-1) ln(1+gamma_e))

    bool feasible() const noexcept { return status == TauFeasibility::feasible; }
    std::string describe() const;
};

/// Requires n >= 2.  m is real so the boundary case m = per_leg_budget(eps_s)
/// can be evaluated; m <= 0 imposes no secrecy constraint.
TauInterval theorem2_tau_range(int n, double m, double gamma_r, double gamma_e,
                               double eps_s, double eps_t);

/// Every closed-form quantity for one parameter point.
struct BoundReport {
    int n = 0;
    int m = 0;
    double gamma_r = 0.0;
    double gamma_e = 0.0;
    double eps_s = 0.0;
    double eps_t = 0.0;

    Tolerance theorem1;
    Tolerance theorem3;
    TauInterval tau_interval;
    bool tau_interval_defined = false;  ///< n >= 2
    double per_leg_budget_t = 0.0;
    double per_leg_budget_s = 0.0;
    /// Evaluated at tau_max when it is defined, otherwise at tau = 0.
    double tau_eval = 0.0;
    double expected_jammers = 0.0;
    double reliability_leg = 0.0;
    double secrecy_leg = 0.0;
    bool secrecy_leg_vacuous = false;
    double eve_intercept_exact = 0.0;
};

BoundReport make_bound_report(int n, int m, double gamma_r, double gamma_e, double eps_s,
                              double eps_t);

} // namespace cjsim::bounds
