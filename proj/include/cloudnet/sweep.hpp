#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cloudnet/cascade.hpp"
#include "cloudnet/immunity.hpp"
#include "cloudnet/topology.hpp"

namespace cloudnet {

struct SweepConfig {
    GenConfig gen;
    std::vector<double> protect_fractions{0.0, 0.05, 0.2};
    std::vector<double> attack_fractions{0.005, 0.05, 0.1};
    std::vector<ProtectStrategy> strategies{ProtectStrategy::Degree, ProtectStrategy::Random};
    std::size_t trials = 100;
    double coefficient_c = 0.9;
    ImmunityConvention convention = ImmunityConvention::Paper;
    bool run_solver = true;
};

struct ResultRow {
    double protect_fraction = 0.0;
    double attack_fraction = 0.0;
    ProtectStrategy strategy = ProtectStrategy::Degree;
    TrialSummary summary;
    std::optional<double> solver_giant_fraction;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

// Strict line-oriented `key = value` configuration. Blank lines and lines
// starting with '#' are skipped; unknown or repeated keys, malformed
// numbers and out-of-range values are fatal. Required keys: hosts,
// vms_per_host, seed. Everything else falls back to the defaults above.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig parse_sweep_config_file(const std::string& path);

// Builds the topology once, then runs every (protect, attack, strategy)
// cell with paired trial streams so cells are comparable. Rows come out in
// grid order: protect outermost, then attack, then strategy.
std::vector<ResultRow> run_sweep(const SweepConfig& config, unsigned threads = 0);

// header: protect_frac,attack_frac,strategy,mean,std,ci95_low,ci95_high,solver_S,trials,seed
void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);

}  // namespace cloudnet
