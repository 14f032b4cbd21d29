#include "cjsim/harness/validate.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "cjsim/analytic_bounds.hpp"
#include "cjsim/channel_model.hpp"
#include "cjsim/monte_carlo.hpp"
#include "cjsim/random_stream.hpp"

namespace cjsim::harness {

namespace {

ValidationCheck make_check(std::string name, double observed, double expected, double tolerance)
{
    ValidationCheck c{std::move(name), observed, expected, tolerance, false};
    c.passed = std::abs(observed - expected) <= tolerance;
    return c;
}

template <typename... Args>
std::string label(const char* fmt, Args... args)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

} // namespace

std::vector<ValidationCheck> run_validation(const ValidationOptions& options)
{
    const std::uint64_t samples = options.quick ? 100000 : 1000000;
    const std::uint64_t trials = options.quick ? 10000 : 100000;
    // Standard errors allowed on moment checks, and the z of the CI checks.
    const double k_se = options.quick ? 4.0 : 3.0;
    const double z = options.quick ? 3.2905267314918945 : 1.959963984540054;

    std::vector<ValidationCheck> checks;

    // E[exp(-gamma X)] = 1/(1+gamma) for X ~ Exp(1).
    for (double gamma : {0.5, 1.0, 2.0}) {
        auto rng = RandomStream::derive(options.seed, StreamDomain::validation,
                                        static_cast<std::uint64_t>(gamma * 1000));
        double sum = 0.0;
        double sum_sq = 0.0;
        for (std::uint64_t i = 0; i < samples; ++i) {
            const double v = std::exp(-gamma * sample_gain(rng));
            sum += v;
            sum_sq += v * v;
        }
        const double n = static_cast<double>(samples);
        const double mean = sum / n;
        const double se = std::sqrt((sum_sq / n - mean * mean) / n);
        checks.push_back(make_check(label("mgf gamma=%g", gamma), mean,
                                    1.0 / (1.0 + gamma), k_se * se));
    }

    ScenarioConfig base;
    base.noise_mode = NoiseMode::interference_limited;
    base.gamma_e = 1.0;
    base.m = 1;
    ProtocolChoice random_relay{RelayPolicy::random_uniform, TauPolicy::manual, 0.0};

    for (auto [n, tau] : {std::pair{11, 0.1}, std::pair{101, 0.05}}) {
        ScenarioConfig c = base;
        c.n = n;
        random_relay.manual_tau = tau;
        const auto est = estimate_outage(c, random_relay, trials, options.seed);
        checks.push_back(make_check(label("jammer count n=%d tau=%g", n, tau),
                                    est.mean_jammers_hop1(), bounds::expected_jammers(n, tau),
                                    k_se * est.mean_jammers_hop1_se()));
    }

    for (double tau : {0.1, 1.0}) {
        ScenarioConfig c = base;
        c.n = 11;
        random_relay.manual_tau = tau;
        const auto est = estimate_outage(c, random_relay, trials, options.seed);
        const auto p = est.p_eve_single_hop1();
        const double oracle_gamma = options.inject_gamma_e.value_or(c.gamma_e);
        const double oracle = bounds::eve_intercept_exact(c.n, oracle_gamma, tau);
        // Wilson interval at the chosen z; tolerance is its half-width on the
        // side facing the oracle.
        const auto ci = stats::wilson(p.successes, p.trials, z);
        const double tol = oracle >= p.p ? ci.ci_hi - p.p : p.p - ci.ci_lo;
        checks.push_back(make_check(label("eve intercept n=11 tau=%g", tau), p.p, oracle, tol));
    }

    {
        ScenarioConfig c;
        c.n = 11;
        c.m = 2;
        c.gamma_r = 1.0;
        c.gamma_e = 1.0;
        c.noise_mode = NoiseMode::exact;
        c.n0 = 0.2;
        random_relay.manual_tau = 0.3;
        const auto est = estimate_outage(c, random_relay, trials, options.seed,
                                         {.mode = SamplingMode::independent_legs});
        auto combine_check = [&](const char* name, const stats::Proportion& h1,
                                 const stats::Proportion& h2, const stats::Proportion& e2e) {
            const double combined = bounds::combine_legs(h1.p, h2.p);
            const double se = std::sqrt(e2e.standard_error() * e2e.standard_error() +
                                        std::pow((1 - h2.p) * h1.standard_error(), 2) +
                                        std::pow((1 - h1.p) * h2.standard_error(), 2));
            checks.push_back(make_check(name, e2e.p, combined, z * se));
        };
        combine_check("combine legs transmission", est.p_t_hop1(), est.p_t_hop2(), est.p_t_e2e());
        combine_check("combine legs secrecy", est.p_s_hop1(), est.p_s_hop2(), est.p_s_e2e());
    }
    return checks;
}

void print_checks(std::ostream& out, const std::vector<ValidationCheck>& checks)
{
    for (const auto& c : checks) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "[%s] %-32s observed=%.6f expected=%.6f tol=%.6f\n",
                      c.passed ? "PASS" : "FAIL", c.name.c_str(), c.observed, c.expected,
                      c.tolerance);
        out << buf;
    }
}

} // namespace cjsim::harness
