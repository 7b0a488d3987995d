#pragma once

#include <cstdint>
#include <vector>

#include "cloudnet/graph.hpp"
#include "cloudnet/immunity.hpp"
#include "cloudnet/rng.hpp"

namespace cloudnet {

struct CascadeConfig {
    double attack_fraction = 0.0;
    double coefficient_c = 0.9;
    double protect_fraction = 0.0;
    ProtectStrategy protect_strategy = ProtectStrategy::Degree;
    std::size_t trials = 1;
    std::uint64_t master_seed = 0;
};

struct CascadeStep {
    std::size_t step = 0;
    std::size_t newly_crashed = 0;
    std::size_t lcc_size = 0;  // largest connected cluster of survivors
};

struct CascadeTrace {
    std::vector<CascadeStep> steps;  // step 0 is the initial attack
    std::size_t final_alive = 0;
    std::size_t final_lcc = 0;
    double survived_ratio = 0.0;  // final_lcc / node count; exactly 1 when nothing was attacked
};

struct TrialSummary {
    double mean = 0.0;
    double stddev = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
};

struct TrialResults {
    std::vector<CascadeTrace> traces;
    TrialSummary summary;  // over final survived ratios
};

// One avalanche: round(attack_fraction * n) nodes sampled uniformly from
// the non-protected population crash at step 0; afterwards every node that
// crashed in the previous step exposes each still-alive, non-protected
// neighbor once, and the neighbor crashes with probability 1 - p_imu.
// Stops when a step produces no new crash. Protected nodes never crash.
CascadeTrace run_cascade(const Graph& graph, const ImmunityProfile& profile,
                         const CascadeConfig& config, Rng& rng);

// Independent trials; trial t draws from the stream derived from
// (master_seed, t), so results do not depend on the thread count.
// threads = 0 picks the hardware concurrency.
TrialResults run_trials(const Graph& graph, const ImmunityProfile& profile,
                        const CascadeConfig& config, unsigned threads = 0);

TrialSummary summarize_ratios(const std::vector<double>& ratios);

}  // namespace cloudnet
