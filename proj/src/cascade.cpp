#include "cloudnet/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace cloudnet {

CascadeTrace run_cascade(const Graph& graph, const ImmunityProfile& profile,
                         const CascadeConfig& config, Rng& rng) {
    const std::size_t n = graph.node_count();
    if (n == 0) throw std::invalid_argument("cascade needs a non-empty graph");
    if (profile.p_imu.size() != n || profile.is_protected.size() != n) {
        throw std::invalid_argument("immunity profile does not match the graph");
    }
    if (!(config.attack_fraction >= 0.0 && config.attack_fraction <= 1.0)) {
        throw std::invalid_argument("attack fraction must lie in [0,1]");
    }

    const std::size_t attacked = static_cast<std::size_t>(
        std::llround(config.attack_fraction * static_cast<double>(n)));

    std::vector<NodeId> roster;
    roster.reserve(n);
    for (NodeId v = 0; v < n; ++v) {
        if (!profile.is_protected[v]) roster.push_back(v);
    }
    if (attacked > roster.size()) {
        throw std::invalid_argument("initial attack of " + std::to_string(attacked) +
                                    " nodes exceeds the " + std::to_string(roster.size()) +
                                    " non-protected nodes");
    }

    AliveMask alive(n, 1);
    CascadeTrace trace;
    std::vector<NodeId> frontier;

    if (attacked > 0) {
        for (std::size_t i = 0; i < attacked; ++i) {
            const std::size_t j = i + rng.next_below(roster.size() - i);
            std::swap(roster[i], roster[j]);
        }
        frontier.assign(roster.begin(), roster.begin() + attacked);
        std::sort(frontier.begin(), frontier.end());
        for (const NodeId v : frontier) alive[v] = 0;
        trace.steps.push_back({0, attacked, largest_connected_component(graph, alive)});
    }

    std::vector<NodeId> next;
    while (!frontier.empty()) {
        next.clear();
        for (const NodeId u : frontier) {
            for (const NodeId v : graph.neighbors(u)) {
                if (!alive[v] || profile.is_protected[v]) continue;
                if (rng.bernoulli(1.0 - profile.p_imu[v])) {
                    alive[v] = 0;
                    next.push_back(v);
                }
            }
        }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        trace.steps.push_back(
            {trace.steps.size(), next.size(), largest_connected_component(graph, alive)});
        frontier.swap(next);
    }

    trace.final_alive = static_cast<std::size_t>(
        std::count(alive.begin(), alive.end(), std::uint8_t{1}));
    trace.final_lcc = largest_connected_component(graph, alive);
    trace.survived_ratio =
        attacked == 0 ? 1.0 : static_cast<double>(trace.final_lcc) / static_cast<double>(n);
    return trace;
}

TrialSummary summarize_ratios(const std::vector<double>& ratios) {
    TrialSummary summary;
    const std::size_t trials = ratios.size();
    if (trials == 0) throw std::invalid_argument("no trials to summarize");

    double sum = 0.0;
    for (const double r : ratios) sum += r;
    summary.mean = sum / static_cast<double>(trials);

    if (trials > 1) {
        double sq = 0.0;
        for (const double r : ratios) {
            const double d = r - summary.mean;
            sq += d * d;
        }
        summary.stddev = std::sqrt(sq / static_cast<double>(trials - 1));
    }
    const double half_width = 1.96 * summary.stddev / std::sqrt(static_cast<double>(trials));
    summary.ci95_low = summary.mean - half_width;
    summary.ci95_high = summary.mean + half_width;
    return summary;
}

TrialResults run_trials(const Graph& graph, const ImmunityProfile& profile,
                        const CascadeConfig& config, unsigned threads) {
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");

    TrialResults results;
    results.traces.resize(config.trials);
    std::vector<std::exception_ptr> errors(config.trials);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, config.trials));

    auto worker = [&](unsigned offset) {
        for (std::size_t t = offset; t < config.trials; t += threads) {
            try {
                Rng rng(derive_stream_seed(config.master_seed, t));
                results.traces[t] = run_cascade(graph, profile, config, rng);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };

    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
        for (auto& th : pool) th.join();
    }

    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    std::vector<double> ratios;
    ratios.reserve(config.trials);
    for (const auto& trace : results.traces) ratios.push_back(trace.survived_ratio);
    results.summary = summarize_ratios(ratios);
    return results;
}

}  // namespace cloudnet
