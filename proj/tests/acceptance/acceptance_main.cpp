// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Every expected value is recomputed here from first principles (direct
// formula evaluation, binomial sums, sample moments) rather than taken from
// the library's own bound functions.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cjsim/analytic_bounds.hpp"
#include "cjsim/channel_model.hpp"
#include "cjsim/harness/serialize.hpp"
#include "cjsim/monte_carlo.hpp"
#include "cjsim/random_stream.hpp"

using namespace cjsim;

namespace {

constexpr std::uint64_t kTrials = 100000;
constexpr double kZ95 = 1.959963984540054;

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            passed = false;
            detail += "[violated] ";
        }
        detail += what + "; ";
    }
};

std::string fmt(const char* f, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// E[(1/(1+g))^K], K ~ Binomial(n-1, 1-e^{-tau}), by explicit pmf summation.
double binomial_intercept_oracle(int n, double g, double tau)
{
    const int trials = n - 1;
    const double p = 1.0 - std::exp(-tau);
    double total = 0.0;
    for (int k = 0; k <= trials; ++k) {
        const double log_pmf = std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(trials - k + 1.0) + k * std::log(p) +
                               (trials - k) * std::log1p(-p);
        total += std::exp(log_pmf - k * std::log1p(g));
    }
    return total;
}

ProtocolChoice random_relay(double tau) { return {RelayPolicy::random_uniform, TauPolicy::manual, tau}; }

ScenarioConfig interference_limited(int n, int m)
{
    ScenarioConfig c;
    c.n = n;
    c.m = m;
    c.gamma_r = 1.0;
    c.gamma_e = 1.0;
    c.noise_mode = NoiseMode::interference_limited;
    return c;
}

Outcome closed_forms()
{
    Outcome o;
    const auto start = std::chrono::steady_clock::now();

    const double t1_oracle = (1 - std::sqrt(1 - 0.1)) * std::pow(2.0, std::sqrt(1000 * std::log(1000.0) / 32));
    const auto t1 = bounds::theorem1_m_max(1000, 1, 1, 0.1);
    o.require(rel_diff(t1.bound, t1_oracle) < 1e-4 &&
                  t1.floored == static_cast<long long>(std::floor(t1_oracle)),
              fmt("theorem1(1000,1,1,0.1) = %.4f floor %lld, direct evaluation %.4f floor %.0f",
                  t1.bound, t1.floored, t1_oracle, std::floor(t1_oracle)));

    const double t3_oracle = (1 - std::sqrt(0.7)) * std::pow(2.0, std::sqrt(-100 * std::log(0.7) / 2));
    const auto t3 = bounds::theorem3_m_max(101, 1, 1, 0.3, 0.3);
    o.require(rel_diff(t3.bound, t3_oracle) < 1e-4 && t3.floored == 3,
              fmt("theorem3(101,1,1,0.3,0.3) = %.4f floor %lld (oracle %.4f)", t3.bound, t3.floored, t3_oracle));

    const double b = 1 - std::sqrt(0.5);
    const double tmin_oracle = -std::log(1 + std::log(b / 1) / (100 * std::log(2.0)));
    const double tmax_oracle = std::sqrt(-std::log(0.5) / (2 * 100));
    const auto iv = bounds::theorem2_tau_range(101, 1, 1, 1, 0.5, 0.5);
    o.require(iv.feasible() && rel_diff(iv.tau_min, tmin_oracle) < 1e-4 &&
                  rel_diff(iv.tau_max, tmax_oracle) < 1e-4,
              fmt("theorem2 tau in [%.7f, %.7f] (oracle [%.7f, %.7f])", iv.tau_min, iv.tau_max,
                  tmin_oracle, tmax_oracle));

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < 1.0, fmt("runtime %.2e s", secs));
    return o;
}

Outcome mgf_identity()
{
    Outcome o;
    constexpr std::uint64_t kSamples = 1000000;
    for (double g : {0.5, 1.0, 2.0}) {
        auto rng = RandomStream::derive(101, StreamDomain::validation, static_cast<std::uint64_t>(g * 10));
        double sum = 0, sum_sq = 0;
        for (std::uint64_t i = 0; i < kSamples; ++i) {
            const double v = std::exp(-g * sample_gain(rng));
            sum += v;
            sum_sq += v * v;
        }
        const double mean = sum / kSamples;
        const double se = std::sqrt((sum_sq / kSamples - mean * mean) / kSamples);
        const double err = std::abs(mean - 1 / (1 + g));
        o.require(err < 3 * se, fmt("gamma=%.1f |%.6f - %.6f| = %.2f SE", g, mean, 1 / (1 + g), err / se));
    }
    return o;
}

Outcome exact_intercept()
{
    Outcome o;
    for (double tau : {0.1, 1.0}) {
        const auto est = estimate_outage(interference_limited(11, 1), random_relay(tau), kTrials, 303);
        const auto p = est.p_eve_single_hop1();
        const double oracle = binomial_intercept_oracle(11, 1.0, tau);
        o.require(std::abs(bounds::eve_intercept_exact(11, 1.0, tau) - oracle) < 1e-12,
                  fmt("closed form matches binomial sum at tau=%.1f", tau));
        o.require(p.ci_lo <= oracle && oracle <= p.ci_hi,
                  fmt("tau=%.1f: %.5f in [%.5f, %.5f] vs oracle %.5f", tau, p.p, p.ci_lo, p.ci_hi, oracle));
    }
    return o;
}

Outcome jensen_gap()
{
    Outcome o;
    auto rng = RandomStream(404);
    int strict = 0;
    double smallest = 1.0;
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(rng.below(99));
        const double g = 0.05 + 4.95 * rng.uniform();
        const double tau = 0.01 + 2.99 * rng.uniform();
        const double exact = bounds::eve_intercept_exact(n, g, tau);
        const double substituted = std::pow(1 / (1 + g), (n - 1) * (1 - std::exp(-tau)));
        strict += exact > substituted;
        smallest = std::min(smallest, (exact - substituted) / exact);
    }
    o.require(strict == 100, fmt("%d/100 grid points strictly above, min relative gap %.3e", strict, smallest));
    return o;
}

Outcome union_bound()
{
    Outcome o;
    for (int m : {1, 2, 5}) {
        const auto est = estimate_outage(interference_limited(11, m), random_relay(1.0), kTrials, 505);
        const auto hop = est.p_s_hop1();
        const auto single = est.p_eve_single_hop1();
        const double slack = 3 * std::sqrt(hop.standard_error() * hop.standard_error() +
                                           m * m * single.standard_error() * single.standard_error());
        o.require(hop.p <= m * single.p + slack,
                  fmt("m=%d: %.5f <= %d x %.5f + %.5f", m, hop.p, m, single.p, slack));
    }
    return o;
}

Outcome leg_combining()
{
    Outcome o;
    ScenarioConfig c;
    c.n = 11;
    c.m = 2;
    c.n0 = 0.2;
    const auto est = estimate_outage(c, random_relay(0.3), kTrials, 606,
                                     {.mode = SamplingMode::independent_legs});
    auto check = [&](const char* name, stats::Proportion h1, stats::Proportion h2, stats::Proportion e2e) {
        const double combined = 1 - (1 - h1.p) * (1 - h2.p);
        const double se = std::sqrt(std::pow(e2e.standard_error(), 2) +
                                    std::pow((1 - h2.p) * h1.standard_error(), 2) +
                                    std::pow((1 - h1.p) * h2.standard_error(), 2));
        o.require(std::abs(e2e.p - combined) <= kZ95 * se,
                  fmt("%s: e2e %.5f vs combined %.5f, CI half-width %.5f", name, e2e.p, combined, kZ95 * se));
    };
    check("transmission", est.p_t_hop1(), est.p_t_hop2(), est.p_t_e2e());
    check("secrecy", est.p_s_hop1(), est.p_s_hop2(), est.p_s_e2e());
    return o;
}

Outcome jammer_count()
{
    Outcome o;
    for (auto [n, tau] : {std::pair{11, 0.1}, std::pair{101, 0.05}}) {
        const auto est = estimate_outage(interference_limited(n, 1), random_relay(tau), kTrials, 707);
        const double expected = (n - 1) * (1 - std::exp(-tau));
        const double se = est.mean_jammers_hop1_se();
        o.require(std::abs(est.mean_jammers_hop1() - expected) < 3 * se,
                  fmt("n=%d tau=%.2f: mean %.4f vs %.4f (%.2f SE)", n, tau, est.mean_jammers_hop1(),
                      expected, std::abs(est.mean_jammers_hop1() - expected) / se));
    }
    return o;
}

Outcome monotonicity()
{
    Outcome o;
    ScenarioConfig c;
    c.n = 21;
    c.m = 2;
    c.gamma_r = c.gamma_e = 1.0;
    int t_violations = 0, s_violations = 0;
    stats::Proportion prev_t, prev_s;
    for (int k = 0; k < 10; ++k) {
        const double tau = 0.1 * k;
        const auto est = estimate_outage(c, random_relay(tau), kTrials, 808);
        const auto t = est.p_t_hop1();
        const auto s = est.p_s_hop1();
        if (k > 0) {
            if (t.p < prev_t.p && t.ci_hi < prev_t.ci_lo)
                ++t_violations;
            if (s.p > prev_s.p && s.ci_lo > prev_s.ci_hi)
                ++s_violations;
        }
        prev_t = t;
        prev_s = s;
    }
    o.require(t_violations == 0 && s_violations == 0,
              fmt("tau grid 0..0.9: %d transmission and %d secrecy trend violations beyond CI",
                  t_violations, s_violations));

    auto rng = RandomStream(809);
    int analytic_failures = 0;
    for (int i = 0; i < 1000; ++i) {
        const int n = 2 + static_cast<int>(rng.below(400));
        const int m = 1 + static_cast<int>(rng.below(20));
        const double gr = 0.1 + 4.9 * rng.uniform(), ge = 0.1 + 4.9 * rng.uniform();
        const double es = 0.01 + 0.9 * rng.uniform(), et = 0.01 + 0.9 * rng.uniform();
        const double up = 1.01 + 0.5 * rng.uniform();
        auto t1 = [&](int nn, double r, double e, double s) { return bounds::theorem1_m_max(nn, r, e, s).bound; };
        auto t3 = [&](int nn, double r, double e, double s, double t) {
            return bounds::theorem3_m_max(nn, r, e, s, t).bound;
        };
        auto tr = [&](int nn, int mm, double r, double e) { return bounds::theorem2_tau_range(nn, mm, r, e, es, et); };
        const double es_up = std::min(1.0, es * up), et_up = std::min(1.0, et * up);
        const bool ok =
            t1(n + 1, gr, ge, es) >= t1(n, gr, ge, es) && t1(n, gr, ge, es_up) >= t1(n, gr, ge, es) &&
            t1(n, gr, ge * up, es) >= t1(n, gr, ge, es) && t1(n, gr * up, ge, es) <= t1(n, gr, ge, es) &&
            t3(n + 1, gr, ge, es, et) >= t3(n, gr, ge, es, et) &&
            t3(n, gr, ge, es_up, et) >= t3(n, gr, ge, es, et) &&
            t3(n, gr, ge * up, es, et) >= t3(n, gr, ge, es, et) &&
            t3(n, gr * up, ge, es, et) <= t3(n, gr, ge, es, et) &&
            t3(n, gr, ge, es, et_up) >= t3(n, gr, ge, es, et) &&
            tr(n + 1, m, gr, ge).tau_max <= tr(n, m, gr, ge).tau_max &&
            tr(n, m, gr * up, ge).tau_max <= tr(n, m, gr, ge).tau_max &&
            tr(n, m + 1, gr, ge).tau_min >= tr(n, m, gr, ge).tau_min &&
            tr(n + 1, m, gr, ge).tau_min <= tr(n, m, gr, ge).tau_min &&
            tr(n, m, gr, ge * up).tau_min <= tr(n, m, gr, ge).tau_min;
        analytic_failures += !ok;
    }
    o.require(analytic_failures == 0, fmt("analytic grid: %d/1000 points violate a monotonicity property", analytic_failures));
    return o;
}

Outcome load_balance_checks()
{
    Outcome o;
    ScenarioConfig c;
    c.n = 10;
    c.m = 0;
    const auto p2 = load_balance(c, random_relay(0.1), kTrials, 909);
    o.require(p2.uniformity.p_value > 0.01, fmt("protocol 2 chi-square p = %.3f", p2.uniformity.p_value));

    const ProtocolChoice p1{RelayPolicy::optimal_maxmin, TauPolicy::protocol1_formula, 0.0};
    c.coherence_len = 100;
    const auto frozen = load_balance(c, p1, 1000 * 100, 909);
    o.require(frozen.epochs == 1000 && frozen.epochs_with_switch == 0,
              fmt("protocol 1, L=100: %llu epochs, %llu with a relay switch",
                  static_cast<unsigned long long>(frozen.epochs),
                  static_cast<unsigned long long>(frozen.epochs_with_switch)));
    o.require(frozen.jain_index >= 0.95, fmt("protocol 1, L=100: Jain %.4f", frozen.jain_index));

    c.coherence_len = 1;
    const auto fresh = load_balance(c, p1, kTrials, 909);
    o.require(fresh.uniformity.p_value > 0.01, fmt("protocol 1, L=1: chi-square p = %.3f", fresh.uniformity.p_value));
    return o;
}

Outcome determinism()
{
    Outcome o;
    ScenarioConfig c;
    c.n = 12;
    c.m = 3;
    const auto p = random_relay(0.25);
    auto render = [](const OutageEstimate& e) { return harness::dump_json(harness::to_json(e)); };
    const auto single = estimate_outage(c, p, kTrials, 1010);
    const auto threaded = estimate_outage(c, p, kTrials, 1010, {.workers = 4});
    std::vector<OutageEstimate> parts;
    for (std::uint64_t w = 0; w < 4; ++w)
        parts.push_back(estimate_trial_range(c, p, 0.25, SamplingMode::shared_realization, 1010,
                                             kTrials * w / 4, kTrials * (w + 1) / 4));
    std::reverse(parts.begin(), parts.end());
    const auto merged = merge_estimates(parts);
    o.require(render(threaded) == render(single), "4 worker threads vs 1: identical JSON bytes");
    o.require(render(merged) == render(single), "4 merged ranges vs 1: identical JSON bytes");
    return o;
}

void tolerance_note()
{
    // Context only: the empirical tolerance sits below the closed-form count
    // because the closed form replaces the random jammer count by its mean.
    ScenarioConfig c;
    c.n = 101;
    c.m = 1;
    c.eps_s = c.eps_t = 0.3;
    const ProtocolChoice p{RelayPolicy::random_uniform, TauPolicy::theorem2_max, 0.0};
    const auto r = tolerance_search(c, p, 0.3, 20000, 32, 1111);
    std::printf("[INFO] empirical tolerance n=101 eps=0.3 at tau_max=%.5f: m=%d (closed form floor %lld)\n",
                r.tau, r.m, bounds::theorem3_m_max(101, 1, 1, 0.3, 0.3).floored);
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"1 closed-form reproduction", closed_forms},
        {"2 exponential MGF identity", mgf_identity},
        {"3 exact intercept oracle", exact_intercept},
        {"4 expectation-substitution gap direction", jensen_gap},
        {"5 union bound over eavesdroppers", union_bound},
        {"6 independent-leg combining", leg_combining},
        {"7 binomial jammer count", jammer_count},
        {"8 monotonicity", monotonicity},
        {"9 load balance", load_balance_checks},
        {"10 parallel determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        const Outcome o = run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %-42s (%.1fs) %s\n", o.passed ? "PASS" : "FAIL", name, secs, o.detail.c_str());
        std::fflush(stdout);
        failures += !o.passed;
    }
    std::printf("[SKIP] %-42s asymptotic n->infinity behaviour of the max-min protocol is not simulated\n",
                "11 out of scope");
    tolerance_note();
    std::printf("%s: %d of %zu criteria failed\n", failures ? "FAILED" : "PASSED", failures, criteria.size());
    return failures ? 1 : 0;
}
