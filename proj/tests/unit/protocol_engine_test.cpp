#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cjsim/analytic_bounds.hpp"
#include "cjsim/protocol_engine.hpp"
#include "cjsim/statistics.hpp"

using namespace cjsim;

namespace {

ChannelRealization with_legs(const std::vector<std::pair<double, double>>& legs)
{
    ChannelRealization h(static_cast<int>(legs.size()), 0);
    for (int j = 0; j < static_cast<int>(legs.size()); ++j) {
        h.set_source_relay(j, legs[static_cast<std::size_t>(j)].first);
        h.set_relay_dest(j, legs[static_cast<std::size_t>(j)].second);
    }
    return h;
}

} // namespace

TEST_CASE("max-min relay selection")
{
    CHECK(select_relay_optimal(with_legs({{0.5, 2.0}, {1.5, 1.2}, {0.3, 3.0}})) == 1);
    CHECK(select_relay_optimal(with_legs({{1, 1}, {1, 2}})) == 0);
    CHECK(select_relay_optimal(with_legs({{0.7, 0.2}})) == 0);
}

TEST_CASE("max-min selection follows relabeling")
{
    auto rng = RandomStream(77);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<std::pair<double, double>> legs(6);
        for (auto& [a, b] : legs) {
            a = sample_gain(rng);
            b = sample_gain(rng);
        }
        const int picked = select_relay_optimal(with_legs(legs));
        std::vector<int> perm(6);
        std::iota(perm.begin(), perm.end(), 0);
        std::rotate(perm.begin(), perm.begin() + 1 + iter % 5, perm.end());
        std::vector<std::pair<double, double>> shuffled(6);
        for (int k = 0; k < 6; ++k)
            shuffled[static_cast<std::size_t>(k)] = legs[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
        CHECK(perm[static_cast<std::size_t>(select_relay_optimal(with_legs(shuffled)))] == picked);
    }
}

TEST_CASE("max-min selection is uniform over fresh realizations")
{
    ScenarioConfig c;
    c.n = 5;
    c.m = 0;
    std::vector<std::uint64_t> counts(5);
    for (std::uint64_t t = 0; t < 100000; ++t) {
        auto rng = RandomStream::derive(8, StreamDomain::channel, t);
        ++counts[static_cast<std::size_t>(select_relay_optimal(sample_realization(c, rng)))];
    }
    CHECK(stats::chi_square_uniform(counts).p_value > 0.01);
}

TEST_CASE("random relay selection")
{
    auto rng = RandomStream(3);
    for (int i = 0; i < 100; ++i)
        CHECK(select_relay_random(1, rng) == 0);

    std::vector<std::uint64_t> counts(4);
    auto rng4 = RandomStream(4);
    for (int i = 0; i < 100000; ++i)
        ++counts[static_cast<std::size_t>(select_relay_random(4, rng4))];
    for (auto c : counts)
        CHECK(std::abs(c / 100000.0 - 0.25) < 0.01);
    CHECK(stats::chi_square_uniform(counts).p_value > 0.01);

    auto a = RandomStream(99);
    auto b = RandomStream(99);
    for (int i = 0; i < 50; ++i)
        CHECK(select_relay_random(9, a) == select_relay_random(9, b));
    CHECK_THROWS_AS(select_relay_random(0, a), ConfigError);
}

TEST_CASE("jammer sets")
{
    ChannelRealization h(3, 0);
    h.set_relay_relay(0, 1, 0.05);
    h.set_relay_relay(1, 2, 0.01);
    h.set_relay_relay(0, 2, 0.5);
    h.set_relay_dest(0, 0.05);
    h.set_relay_dest(1, 0.2);
    h.set_relay_dest(2, 0.01);

    CHECK(jammer_set(h, HopReceiver::destination, 1, 0.0).empty());
    CHECK(jammer_set(h, HopReceiver::destination, 1, 0.1) == std::vector<int>{0, 2});
    CHECK(jammer_set(h, HopReceiver::destination, 1, 10.0) == std::vector<int>{0, 2});
    CHECK(jammer_set(h, HopReceiver::selected_relay, 1, 0.1) == std::vector<int>{0, 2});
    CHECK(jammer_set(h, HopReceiver::selected_relay, 0, 0.1) == std::vector<int>{1});
}

TEST_CASE("jammer set grows with tau")
{
    ScenarioConfig c;
    c.n = 12;
    c.m = 0;
    auto rng = RandomStream(5);
    for (int iter = 0; iter < 100; ++iter) {
        const auto h = sample_realization(c, rng);
        const int sel = static_cast<int>(rng.below(12));
        std::vector<int> prev;
        for (double tau : {0.0, 0.05, 0.2, 0.5, 1.0, 3.0}) {
            for (auto recv : {HopReceiver::selected_relay, HopReceiver::destination}) {
                const auto now = jammer_set(h, recv, sel, tau);
                CHECK(std::find(now.begin(), now.end(), sel) == now.end());
            }
            const auto now = jammer_set(h, HopReceiver::destination, sel, tau);
            CHECK(std::includes(now.begin(), now.end(), prev.begin(), prev.end()));
            prev = now;
        }
    }
}

TEST_CASE("jammer count is binomial")
{
    ScenarioConfig c;
    c.n = 11;
    c.m = 0;
    const double tau = 0.1;
    double sum = 0.0, sum_sq = 0.0;
    constexpr int kTrials = 50000;
    for (int t = 0; t < kTrials; ++t) {
        auto rng = RandomStream::derive(6, StreamDomain::channel, static_cast<unsigned>(t));
        const auto h = sample_realization(c, rng);
        const double k = static_cast<double>(jammer_set(h, HopReceiver::selected_relay, t % 11, tau).size());
        sum += k;
        sum_sq += k * k;
    }
    const double mean = sum / kTrials;
    const double se = std::sqrt((sum_sq / kTrials - mean * mean) / kTrials);
    CHECK(std::abs(mean - 10.0 * (1.0 - std::exp(-tau))) < 3.0 * se);
}

TEST_CASE("Protocol 1 jamming threshold")
{
    CHECK(tau_protocol1(1, 1.0) == 0.0);
    CHECK(tau_protocol1(100, 1.0) == doctest::Approx(0.0758714).epsilon(1e-5));
    CHECK(tau_protocol1(100, 4.0) == doctest::Approx(0.0379357).epsilon(1e-5));
}

TEST_CASE("tau policy resolution")
{
    ScenarioConfig c;
    c.n = 101;
    c.m = 1;
    c.eps_s = c.eps_t = 0.5;
    ProtocolChoice p{RelayPolicy::random_uniform, TauPolicy::theorem2_max, 0.0};
    CHECK(resolve_tau(p, c) == doctest::Approx(0.0588705));
    p.tau_policy = TauPolicy::theorem2_min;
    CHECK(resolve_tau(p, c) == doctest::Approx(0.0178743));
    p.tau_policy = TauPolicy::manual;
    p.manual_tau = 0.3;
    CHECK(resolve_tau(p, c) == 0.3);
    p.manual_tau = -1.0;
    CHECK_THROWS_AS(resolve_tau(p, c), ConfigError);

    c.n = 2;
    c.m = 10;
    c.eps_s = 0.1;
    p.tau_policy = TauPolicy::theorem2_max;
    CHECK_THROWS_AS(resolve_tau(p, c), InfeasibleConfiguration);
}

TEST_CASE("two-hop execution on a hand-set realization")
{
    ScenarioConfig c;
    c.n = 2;
    c.m = 1;
    c.es = 1.0;
    c.n0 = 0.2;
    c.gamma_r = 1.0;
    c.gamma_e = 2.0;
    ChannelRealization h(2, 1);
    h.set_source_relay(0, 2.0);
    h.set_source_relay(1, 0.5);
    h.set_relay_dest(0, 1.5);
    h.set_relay_dest(1, 0.3);
    h.set_relay_relay(0, 1, 0.05);
    h.set_source_eve(0, 0.8);
    h.set_relay_eve(0, 0, 0.4);
    h.set_relay_eve(1, 0, 0.6);

    ProtocolChoice p{RelayPolicy::optimal_maxmin, TauPolicy::manual, 0.1};
    auto rng = RandomStream(1);
    const auto rec = execute_two_hop(h, p, 0.1, c, rng);
    // mins 1.5 and 0.3 pick relay 0; only R1->R0 = 0.05 is under tau.
    CHECK(rec.selected_relay == 0);
    CHECK(rec.jammers_hop1 == std::vector<int>{1});
    CHECK(rec.jammers_hop2.empty());
    CHECK(rec.sinr_relay == doctest::Approx(2.0 / (0.05 + 0.1)));
    CHECK(rec.sinr_dest == doctest::Approx(1.5 / 0.1));
    REQUIRE(rec.sinr_eves_hop1.size() == 1);
    CHECK(rec.sinr_eves_hop1[0] == doctest::Approx(0.8 / (0.6 + 0.1)));
    CHECK(rec.sinr_eves_hop2[0] == doctest::Approx(0.4 / 0.1));

    const auto f = classify_outage(rec, c);
    CHECK_FALSE(f.t_out_hop1);
    CHECK_FALSE(f.t_out_hop2);
    CHECK_FALSE(f.s_out_hop1);
    CHECK(f.s_out_hop2);
    CHECK_FALSE(f.t_out_e2e);
    CHECK(f.s_out_e2e);
}

TEST_CASE("degenerate jamming")
{
    ScenarioConfig c;
    c.n = 1;
    c.m = 2;
    c.noise_mode = NoiseMode::interference_limited;
    auto rng = RandomStream(2);
    const auto h = sample_realization(c, rng);
    for (auto kind : {RelayPolicy::optimal_maxmin, RelayPolicy::random_uniform}) {
        ProtocolChoice p{kind, TauPolicy::manual, 0.5};
        const auto rec = execute_two_hop(h, p, 0.5, c, rng);
        CHECK(rec.selected_relay == 0);
        CHECK(rec.jammers_hop1.empty());
        CHECK(rec.jammers_hop2.empty());
        for (auto v : rec.sinr_eves_hop1)
            CHECK(is_unbounded(v));
    }

    c.n = 6;
    c.noise_mode = NoiseMode::exact;
    c.n0 = 0.4;
    const auto h6 = sample_realization(c, rng);
    ProtocolChoice p{RelayPolicy::random_uniform, TauPolicy::manual, 0.0};
    const auto rec = execute_two_hop(h6, p, 0.0, c, rng);
    CHECK(rec.jammers_hop1.empty());
    CHECK(rec.jammers_hop2.empty());
    CHECK(rec.sinr_relay == doctest::Approx(h6.source_relay(rec.selected_relay) / 0.2));
}

TEST_CASE("outage classification boundaries")
{
    ScenarioConfig c;
    c.gamma_r = 2.0;
    c.gamma_e = 3.0;
    TransmissionRecord rec;
    rec.sinr_relay = 2.0;
    rec.sinr_dest = 2.5;
    rec.sinr_eves_hop1 = {1.0, 3.0};
    rec.sinr_eves_hop2 = {2.9};
    auto f = classify_outage(rec, c);
    CHECK(f.t_out_hop1);  // decoding needs strictly more than gamma_r
    CHECK_FALSE(f.t_out_hop2);
    CHECK(f.s_out_hop1);  // intercept at exactly gamma_e
    CHECK_FALSE(f.s_out_hop2);
    CHECK(f.t_out_e2e);
    CHECK(f.s_out_e2e);

    c.gamma_r = 1e-300;
    c.gamma_e = 1e300;
    f = classify_outage(rec, c);
    CHECK_FALSE(f.t_out_e2e);
    CHECK_FALSE(f.s_out_e2e);
}
