#include "cjsim/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <string>
#include <thread>

#include "cjsim/channel_model.hpp"
#include "cjsim/random_stream.hpp"

namespace cjsim {

std::string_view to_string(SamplingMode mode) noexcept
{
    return mode == SamplingMode::shared_realization ? "shared" : "independent-legs";
}

SamplingMode parse_sampling_mode(std::string_view text)
{
    if (text == "shared" || text == "shared-realization")
        return SamplingMode::shared_realization;
    if (text == "independent-legs" || text == "independent")
        return SamplingMode::independent_legs;
    throw ConfigError("unknown sampling mode '" + std::string(text) + "'");
}

OutageCounts& OutageCounts::operator+=(const OutageCounts& o) noexcept
{
    trials += o.trials;
    t_hop1 += o.t_hop1;
    t_hop2 += o.t_hop2;
    t_e2e += o.t_e2e;
    s_hop1 += o.s_hop1;
    s_hop2 += o.s_hop2;
    s_e2e += o.s_e2e;
    s_both += o.s_both;
    eve_hop1_hits += o.eve_hop1_hits;
    eve_hop1_chances += o.eve_hop1_chances;
    jammers_hop1 += o.jammers_hop1;
    jammers_hop1_sq += o.jammers_hop1_sq;
    jammers_hop2 += o.jammers_hop2;
    jammers_hop2_sq += o.jammers_hop2_sq;
    return *this;
}

double OutageEstimate::mean_jammers_hop1() const noexcept
{
    return counts.trials ? static_cast<double>(counts.jammers_hop1) / counts.trials : 0.0;
}

double OutageEstimate::mean_jammers_hop1_se() const noexcept
{
    if (counts.trials < 2)
        return 0.0;
    const double n = static_cast<double>(counts.trials);
    const double mean = mean_jammers_hop1();
    const double var = (static_cast<double>(counts.jammers_hop1_sq) - n * mean * mean) / (n - 1.0);
    return std::sqrt(std::max(0.0, var) / n);
}

double OutageEstimate::mean_jammers_hop2() const noexcept
{
    return counts.trials ? static_cast<double>(counts.jammers_hop2) / counts.trials : 0.0;
}

double OutageEstimate::secrecy_hop_correlation() const noexcept
{
    if (counts.trials == 0)
        return 0.0;
    const double n = static_cast<double>(counts.trials);
    const double a = counts.s_hop1 / n;
    const double b = counts.s_hop2 / n;
    const double ab = counts.s_both / n;
    const double denom = std::sqrt(a * (1.0 - a) * b * (1.0 - b));
    return denom > 0.0 ? (ab - a * b) / denom : 0.0;
}

OutageEstimate estimate_trial_range(const ScenarioConfig& config, const ProtocolChoice& protocol,
                                    double tau, SamplingMode mode, std::uint64_t seed,
                                    std::uint64_t first, std::uint64_t end)
{
    config.validate();
    if (end < first)
        throw ConfigError("trial range end precedes its start");

    OutageEstimate est;
    est.config = config;
    est.protocol = protocol;
    est.tau = tau;
    est.mode = mode;
    est.seed = seed;
    est.first_trial = first;
    est.end_trial = end;

    OutageCounts& c = est.counts;
    for (std::uint64_t t = first; t < end; ++t) {
        auto channel_rng = RandomStream::derive(seed, StreamDomain::channel, t);
        auto selection_rng = RandomStream::derive(seed, StreamDomain::selection, t);
        const auto hop1 = sample_realization(config, channel_rng);
        TransmissionRecord rec;
        if (mode == SamplingMode::independent_legs) {
            auto second_rng = RandomStream::derive(seed, StreamDomain::channel_second_hop, t);
            const auto hop2 = sample_realization(config, second_rng);
            rec = execute_two_hop(hop1, hop2, protocol, tau, config, selection_rng);
        } else {
            rec = execute_two_hop(hop1, protocol, tau, config, selection_rng);
        }
        const auto flags = classify_outage(rec, config);

        ++c.trials;
        c.t_hop1 += flags.t_out_hop1;
        c.t_hop2 += flags.t_out_hop2;
        c.t_e2e += flags.t_out_e2e;
        c.s_hop1 += flags.s_out_hop1;
        c.s_hop2 += flags.s_out_hop2;
        c.s_e2e += flags.s_out_e2e;
        c.s_both += flags.s_out_hop1 && flags.s_out_hop2;
        for (Sinr v : rec.sinr_eves_hop1)
            c.eve_hop1_hits += v >= config.gamma_e;
        c.eve_hop1_chances += rec.sinr_eves_hop1.size();
        const std::uint64_t k1 = rec.jammers_hop1.size();
        const std::uint64_t k2 = rec.jammers_hop2.size();
        c.jammers_hop1 += k1;
        c.jammers_hop1_sq += k1 * k1;
        c.jammers_hop2 += k2;
        c.jammers_hop2_sq += k2 * k2;
    }
    return est;
}

OutageEstimate estimate_outage(const ScenarioConfig& config, const ProtocolChoice& protocol,
                               std::uint64_t trials, std::uint64_t seed,
                               const EstimateOptions& options)
{
    config.validate();
    if (trials < 1)
        throw ConfigError("trials must be >= 1");
    const double tau = resolve_tau(protocol, config);

    const std::uint64_t workers =
        std::clamp<std::uint64_t>(options.workers, 1, std::max<std::uint64_t>(trials, 1));
    if (workers == 1)
        return estimate_trial_range(config, protocol, tau, options.mode, seed, 0, trials);

    std::vector<OutageEstimate> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t first = trials * w / workers;
            const std::uint64_t end = trials * (w + 1) / workers;
            pool.emplace_back([&, w, first, end] {
                try {
                    parts[w] = estimate_trial_range(config, protocol, tau, options.mode, seed,
                                                    first, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return merge_estimates(parts);
}

OutageEstimate merge_estimates(std::span<const OutageEstimate> parts)
{
    if (parts.empty())
        throw ConfigError("nothing to merge");
    std::vector<const OutageEstimate*> order;
    for (const auto& p : parts)
        order.push_back(&p);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        return a->first_trial < b->first_trial ||
               (a->first_trial == b->first_trial && a->end_trial < b->end_trial);
    });

    const OutageEstimate& head = *order.front();
    OutageEstimate merged = head;
    merged.counts = {};
    std::uint64_t cursor = head.first_trial;
    for (const auto* p : order) {
        if (!(p->config == head.config) || !(p->protocol == head.protocol) ||
            p->tau != head.tau || p->mode != head.mode || p->seed != head.seed)
            throw ConfigError("cannot merge estimates from different runs");
        if (p->first_trial < cursor)
            throw ConfigError("merged estimates have overlapping trial ranges");
        cursor = std::max(cursor, p->end_trial);
        merged.counts += p->counts;
    }
    merged.end_trial = cursor;
    return merged;
}

ToleranceResult tolerance_search(const ScenarioConfig& config, const ProtocolChoice& protocol,
                                 double eps_s, std::uint64_t trials, int m_cap,
                                 std::uint64_t seed, const EstimateOptions& options)
{
    if (m_cap < 1)
        throw ConfigError("m_cap must be >= 1");
    if (!(eps_s >= 0.0 && eps_s <= 1.0))
        throw ConfigError("eps_s must lie in [0, 1]");

    ScenarioConfig base = config;
    base.m = std::max(base.m, 1);
    base.validate();

    ToleranceResult result;
    result.tau = resolve_tau(protocol, base);
    ProtocolChoice fixed = protocol;
    fixed.tau_policy = TauPolicy::manual;
    fixed.manual_tau = result.tau;

    std::map<int, bool> cache;
    auto within_budget = [&](int m) {
        if (auto it = cache.find(m); it != cache.end())
            return it->second;
        ScenarioConfig c = base;
        c.m = m;
        const auto p = estimate_outage(c, fixed, trials, seed, options).p_s_e2e();
        result.evaluations.emplace_back(m, p);
        const bool ok = p.ci_hi <= eps_s;
        cache.emplace(m, ok);
        return ok;
    };

    if (!within_budget(1)) {
        result.violated_at_one = true;
        return result;
    }
    int good = 1;
    int bad = 0;
    for (int probe = 2;; probe *= 2) {
        if (probe >= m_cap) {
            if (within_budget(m_cap)) {
                result.m = m_cap;
                result.capped = true;
                return result;
            }
            bad = m_cap;
            break;
        }
        if (!within_budget(probe)) {
            bad = probe;
            break;
        }
        good = probe;
    }
    while (bad - good > 1) {
        const int mid = good + (bad - good) / 2;
        (within_budget(mid) ? good : bad) = mid;
    }
    result.m = good;
    return result;
}

LoadBalanceStats load_balance(const ScenarioConfig& config, const ProtocolChoice& protocol,
                              std::uint64_t slots, std::uint64_t seed)
{
    config.validate();
    if (slots < 1)
        throw ConfigError("slots must be >= 1");

    LoadBalanceStats out;
    out.selection_counts.assign(static_cast<std::size_t>(config.n), 0);
    out.slots = slots;
    out.coherence_len = config.coherence_len;

    const auto len = static_cast<std::uint64_t>(config.coherence_len);
    ChannelRealization channel;
    int epoch_first = -1;
    bool switched = false;
    for (std::uint64_t slot = 0; slot < slots; ++slot) {
        if (slot % len == 0) {
            out.epochs_with_switch += switched;
            switched = false;
            epoch_first = -1;
            auto rng = RandomStream::derive(seed, StreamDomain::epoch_channel, slot / len);
            channel = sample_realization(config, rng);
            ++out.epochs;
        }
        int selected = 0;
        if (protocol.kind == RelayPolicy::optimal_maxmin) {
            selected = select_relay_optimal(channel);
        } else {
            auto rng = RandomStream::derive(seed, StreamDomain::slot_selection, slot);
            selected = select_relay_random(config.n, rng);
        }
        if (epoch_first < 0)
            epoch_first = selected;
        else if (selected != epoch_first)
            switched = true;
        ++out.selection_counts[static_cast<std::size_t>(selected)];
    }
    out.epochs_with_switch += switched;

    out.jain_index = stats::jain_index(out.selection_counts);
    out.entropy = stats::entropy(out.selection_counts);
    out.uniformity = stats::chi_square_uniform(out.selection_counts);
    return out;
}

} // namespace cjsim
