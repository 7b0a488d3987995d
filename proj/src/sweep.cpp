#include "cloudnet/sweep.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "cloudnet/format.hpp"
#include "cloudnet/percolation.hpp"

namespace cloudnet {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail_key(const std::string& key, const std::string& what) {
    throw std::runtime_error("sweep config, key '" + key + "': " + what);
}

double parse_double(const std::string& key, const std::string& token) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (errno != 0 || end != token.c_str() + token.size() || token.empty()) {
        fail_key(key, "malformed number '" + token + "'");
    }
    return value;
}

std::uint64_t parse_u64(const std::string& key, const std::string& token) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(token.c_str(), &end, 10);
    if (errno != 0 || end != token.c_str() + token.size() || token.empty() ||
        token.front() == '-') {
        fail_key(key, "malformed non-negative integer '" + token + "'");
    }
    return value;
}

std::uint32_t parse_u32(const std::string& key, const std::string& token) {
    const std::uint64_t value = parse_u64(key, token);
    if (value > UINT32_MAX) fail_key(key, "value out of range");
    return static_cast<std::uint32_t>(value);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        const std::size_t comma = value.find(',', pos);
        const std::size_t end = comma == std::string::npos ? value.size() : comma;
        items.push_back(trim(value.substr(pos, end - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return items;
}

std::vector<double> parse_fraction_list(const std::string& key, const std::string& value) {
    std::vector<double> fractions;
    for (const auto& item : split_list(value)) {
        const double f = parse_double(key, item);
        if (!(f >= 0.0 && f <= 1.0)) fail_key(key, "fraction " + item + " outside [0,1]");
        fractions.push_back(f);
    }
    if (fractions.empty()) fail_key(key, "empty list");
    return fractions;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig config;
    std::set<std::string> seen;
    bool has_hosts = false, has_vms = false, has_seed = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("sweep config, line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw std::runtime_error("sweep config, line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        }
        if (!seen.insert(key).second) fail_key(key, "repeated key");

        if (key == "hosts") {
            config.gen.host_count = parse_u32(key, value);
            has_hosts = true;
        } else if (key == "vms_per_host") {
            config.gen.vms_per_host = parse_u32(key, value);
            has_vms = true;
        } else if (key == "s_min") {
            config.gen.s_min = parse_u32(key, value);
        } else if (key == "s_max") {
            config.gen.s_max = parse_u32(key, value);
        } else if (key == "alpha") {
            config.gen.alpha = parse_double(key, value);
        } else if (key == "m") {
            config.gen.m = parse_u32(key, value);
        } else if (key == "seed") {
            config.gen.seed = parse_u64(key, value);
            has_seed = true;
        } else if (key == "protect_fractions") {
            config.protect_fractions = parse_fraction_list(key, value);
        } else if (key == "attack_fractions") {
            config.attack_fractions = parse_fraction_list(key, value);
        } else if (key == "strategies") {
            config.strategies.clear();
            for (const auto& item : split_list(value)) {
                try {
                    config.strategies.push_back(protect_strategy_from_token(item));
                } catch (const std::exception& e) {
                    fail_key(key, e.what());
                }
            }
            if (config.strategies.empty()) fail_key(key, "empty list");
        } else if (key == "trials") {
            const std::uint64_t trials = parse_u64(key, value);
            if (trials < 1) fail_key(key, "trials must be >= 1");
            config.trials = static_cast<std::size_t>(trials);
        } else if (key == "C") {
            const double c = parse_double(key, value);
            if (!(c >= 0.0 && c <= 1.0)) fail_key(key, "value " + value + " outside [0,1]");
            config.coefficient_c = c;
        } else if (key == "immunity_convention") {
            try {
                config.convention = immunity_convention_from_token(value);
            } catch (const std::exception& e) {
                fail_key(key, e.what());
            }
        } else if (key == "solver") {
            if (value == "on") {
                config.run_solver = true;
            } else if (value == "off") {
                config.run_solver = false;
            } else {
                fail_key(key, "expected 'on' or 'off'");
            }
        } else {
            fail_key(key, "unknown key");
        }
    }

    std::string missing;
    if (!has_hosts) missing += " hosts";
    if (!has_vms) missing += " vms_per_host";
    if (!has_seed) missing += " seed";
    if (!missing.empty()) {
        throw std::runtime_error("sweep config: missing required key(s):" + missing);
    }
    return config;
}

SweepConfig parse_sweep_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return parse_sweep_config(in);
}

std::vector<ResultRow> run_sweep(const SweepConfig& config, unsigned threads) {
    const LayeredTopology topology = generate_topology(config.gen);
    const LabeledGraph network = simplify(topology);
    const Graph& graph = network.graph;
    const std::vector<double> p_imu =
        immunity_per_node(network, config.coefficient_c, config.convention);

    std::vector<ResultRow> rows;
    rows.reserve(config.protect_fractions.size() * config.attack_fractions.size() *
                 config.strategies.size());

    for (const double protect : config.protect_fractions) {
        for (const double attack : config.attack_fractions) {
            for (const ProtectStrategy strategy : config.strategies) {
                try {
                    // same selection stream every cell: random sets nest
                    // across budgets, degree ignores it entirely
                    Rng selection(derive_stream_seed(config.gen.seed, kProtectSelectionStream));
                    ImmunityProfile profile;
                    profile.p_imu = p_imu;
                    profile.protected_set =
                        select_immune_set(graph, protect, strategy, selection);
                    profile.is_protected.assign(graph.node_count(), 0);
                    for (const NodeId v : profile.protected_set) profile.is_protected[v] = 1;
                    profile.coefficient_c = config.coefficient_c;
                    profile.initial_removed_fraction = attack;

                    CascadeConfig cascade_config;
                    cascade_config.attack_fraction = attack;
                    cascade_config.coefficient_c = config.coefficient_c;
                    cascade_config.protect_fraction = protect;
                    cascade_config.protect_strategy = strategy;
                    cascade_config.trials = config.trials;
                    cascade_config.master_seed = config.gen.seed;

                    const TrialResults trials =
                        run_trials(graph, profile, cascade_config, threads);

                    ResultRow row;
                    row.protect_fraction = protect;
                    row.attack_fraction = attack;
                    row.strategy = strategy;
                    row.summary = trials.summary;
                    row.trials = config.trials;
                    row.seed = config.gen.seed;

                    if (config.run_solver) {
                        const auto membership = membership_probabilities(
                            graph.node_count(), profile.protected_set, strategy, protect);
                        const auto probs =
                            edge_probabilities_protected(graph, p_imu, attack, membership);
                        row.solver_giant_fraction = solve_scalar(graph, probs).giant_fraction;
                    }
                    rows.push_back(std::move(row));
                } catch (const std::exception& e) {
                    throw std::runtime_error(
                        "sweep cell protect=" + format_number(protect) +
                        " attack=" + format_number(attack) +
                        " strategy=" + to_token(strategy) + ": " + e.what());
                }
            }
        }
    }
    return rows;
}

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows) {
    out << "protect_frac,attack_frac,strategy,mean,std,ci95_low,ci95_high,solver_S,trials,seed\n";
    for (const ResultRow& row : rows) {
        out << format_number(row.protect_fraction) << ',' << format_number(row.attack_fraction)
            << ',' << to_token(row.strategy) << ',' << format_number(row.summary.mean) << ','
            << format_number(row.summary.stddev) << ',' << format_number(row.summary.ci95_low)
            << ',' << format_number(row.summary.ci95_high) << ',';
        if (row.solver_giant_fraction) out << format_number(*row.solver_giant_fraction);
        out << ',' << row.trials << ',' << row.seed << "\n";
    }
}

}  // namespace cloudnet
