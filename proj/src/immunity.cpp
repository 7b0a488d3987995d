#include "cloudnet/immunity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace cloudnet {

const char* to_token(ImmunityConvention convention) {
    return convention == ImmunityConvention::Paper ? "paper" : "prose";
}

ImmunityConvention immunity_convention_from_token(const std::string& token) {
    if (token == "paper") return ImmunityConvention::Paper;
    if (token == "prose") return ImmunityConvention::Prose;
    throw std::invalid_argument("unknown immunity convention '" + token + "'");
}

const char* to_token(ProtectStrategy strategy) {
    return strategy == ProtectStrategy::Degree ? "degree" : "random";
}

ProtectStrategy protect_strategy_from_token(const std::string& token) {
    if (token == "degree") return ProtectStrategy::Degree;
    if (token == "random") return ProtectStrategy::Random;
    throw std::invalid_argument("unknown protect strategy '" + token + "'");
}

double immunity_probability(std::uint32_t subnet_size, std::uint32_t total_virtual, double c,
                            ImmunityConvention convention) {
    if (subnet_size < 1 || subnet_size > total_virtual) {
        throw std::invalid_argument("subnet size " + std::to_string(subnet_size) +
                                    " outside [1, " + std::to_string(total_virtual) + "]");
    }
    if (!(c >= 0.0 && c <= 1.0)) {
        throw std::invalid_argument("coefficient C must lie in [0,1]");
    }
    const double share = static_cast<double>(subnet_size) / static_cast<double>(total_virtual);
    return convention == ImmunityConvention::Paper ? 1.0 - share * c
                                                   : 1.0 - (1.0 - share) * c;
}

double host_immunity(std::span<const std::uint32_t> resident_subnet_sizes,
                     std::uint32_t total_virtual, double c, ImmunityConvention convention) {
    if (resident_subnet_sizes.empty()) return 1.0;
    double sum = 0.0;
    for (const std::uint32_t s : resident_subnet_sizes) sum += s;
    const double mean = sum / static_cast<double>(resident_subnet_sizes.size());
    const auto rounded = std::max<long long>(1, std::llround(mean));
    return immunity_probability(static_cast<std::uint32_t>(rounded), total_virtual, c, convention);
}

double host_immunity(const LayeredTopology& topology, std::uint32_t host_index, double c,
                     ImmunityConvention convention) {
    std::uint32_t total_virtual = 0;
    std::vector<std::uint32_t> subnet_size_of_vm(topology.host_of_vm.size(), 0);
    for (const auto& subnet : topology.subnetworks) {
        total_virtual += static_cast<std::uint32_t>(subnet.members.size());
        for (const NodeId vm : subnet.members) {
            subnet_size_of_vm[vm] = static_cast<std::uint32_t>(subnet.members.size());
        }
    }
    std::vector<std::uint32_t> sizes;
    for (std::size_t vm = 0; vm < topology.host_of_vm.size(); ++vm) {
        if (topology.host_of_vm[vm] == host_index) sizes.push_back(subnet_size_of_vm[vm]);
    }
    return host_immunity(sizes, total_virtual, c, convention);
}

std::vector<double> immunity_per_node(const LabeledGraph& network, double c,
                                      ImmunityConvention convention) {
    const Graph& g = network.graph;
    const std::size_t n = g.node_count();

    std::unordered_map<std::int32_t, std::uint32_t> subnet_size;
    std::uint32_t total_virtual = 0;
    for (NodeId v = 0; v < n; ++v) {
        if (g.kind(v) == NodeKind::Vm) {
            ++total_virtual;
            ++subnet_size[network.subnet_of[v]];
        }
    }

    // per-host mean of resident VMs' sub-network sizes
    std::vector<double> host_size_sum(n, 0.0);
    std::vector<std::uint32_t> host_vm_count(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        if (g.kind(v) == NodeKind::Vm) {
            const auto host = static_cast<NodeId>(network.host_of[v]);
            host_size_sum[host] += subnet_size[network.subnet_of[v]];
            ++host_vm_count[host];
        }
    }

    std::vector<double> p_imu(n, 1.0);
    for (NodeId v = 0; v < n; ++v) {
        if (g.kind(v) == NodeKind::Vm) {
            p_imu[v] = immunity_probability(subnet_size[network.subnet_of[v]], total_virtual, c,
                                            convention);
        } else if (host_vm_count[v] > 0) {
            const double mean = host_size_sum[v] / host_vm_count[v];
            const auto rounded = std::max<long long>(1, std::llround(mean));
            p_imu[v] = immunity_probability(static_cast<std::uint32_t>(rounded), total_virtual,
                                            c, convention);
        }
    }
    return p_imu;
}

std::vector<NodeId> select_immune_set(const Graph& graph, double fraction,
                                      ProtectStrategy strategy, Rng& rng) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("protect fraction must lie in [0,1]");
    }
    const std::size_t n = graph.node_count();
    const std::size_t budget = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(n)));
    if (budget == 0) return {};

    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);

    if (strategy == ProtectStrategy::Degree) {
        std::sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) {
            if (graph.degree(a) != graph.degree(b)) return graph.degree(a) > graph.degree(b);
            return a < b;
        });
    } else {
        // partial Fisher-Yates: the first k picks are a uniform sample
        // without replacement, and a larger budget extends a smaller one
        for (std::size_t i = 0; i < budget; ++i) {
            const std::size_t j = i + rng.next_below(n - i);
            std::swap(ids[i], ids[j]);
        }
    }

    ids.resize(budget);
    std::sort(ids.begin(), ids.end());
    return ids;
}

double edge_probability(double eta, double p_imu_j) {
    if (!(eta >= 0.0 && eta <= 1.0) || !(p_imu_j >= 0.0 && p_imu_j <= 1.0)) {
        throw std::invalid_argument("edge probability arguments must lie in [0,1]");
    }
    const double both_kept = (1.0 - eta) * (1.0 - eta);
    return both_kept * p_imu_j;
}

double edge_probability_protected(double eta, double p_imu_j, double p_j_in_b) {
    if (!(eta >= 0.0 && eta <= 1.0) || !(p_imu_j >= 0.0 && p_imu_j <= 1.0) ||
        !(p_j_in_b >= 0.0 && p_j_in_b <= 1.0)) {
        throw std::invalid_argument("edge probability arguments must lie in [0,1]");
    }
    const double both_kept = (1.0 - eta) * (1.0 - eta);
    return both_kept * (p_imu_j + p_j_in_b * (1.0 - p_imu_j));
}

std::vector<double> edge_probabilities(const Graph& graph, std::span<const double> p_imu,
                                       double eta) {
    if (p_imu.size() != graph.node_count()) {
        throw std::invalid_argument("p_imu length does not match node count");
    }
    std::vector<double> probs(graph.half_edge_count());
    for (HalfEdgeId e = 0; e < probs.size(); ++e) {
        probs[e] = edge_probability(eta, p_imu[graph.tail(e)]);
    }
    return probs;
}

std::vector<double> edge_probabilities_protected(const Graph& graph,
                                                 std::span<const double> p_imu, double eta,
                                                 std::span<const double> p_in_b) {
    if (p_imu.size() != graph.node_count() || p_in_b.size() != graph.node_count()) {
        throw std::invalid_argument("per-node probability length does not match node count");
    }
    std::vector<double> probs(graph.half_edge_count());
    for (HalfEdgeId e = 0; e < probs.size(); ++e) {
        const NodeId j = graph.tail(e);
        probs[e] = edge_probability_protected(eta, p_imu[j], p_in_b[j]);
    }
    return probs;
}

std::vector<double> membership_probabilities(std::size_t node_count,
                                             std::span<const NodeId> protected_set,
                                             ProtectStrategy strategy, double fraction) {
    if (strategy == ProtectStrategy::Random) {
        return std::vector<double>(node_count, fraction);
    }
    std::vector<double> member(node_count, 0.0);
    for (const NodeId v : protected_set) member[v] = 1.0;
    return member;
}

ImmunityProfile build_profile(const LabeledGraph& network, double c,
                              ImmunityConvention convention, double protect_fraction,
                              ProtectStrategy strategy, Rng& rng, double eta) {
    ImmunityProfile profile;
    profile.p_imu = immunity_per_node(network, c, convention);
    profile.protected_set = select_immune_set(network.graph, protect_fraction, strategy, rng);
    profile.is_protected.assign(network.graph.node_count(), 0);
    for (const NodeId v : profile.protected_set) profile.is_protected[v] = 1;
    profile.coefficient_c = c;
    profile.initial_removed_fraction = eta;
    return profile;
}

}  // namespace cloudnet
