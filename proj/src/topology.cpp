#include "cloudnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cloudnet {

namespace {

// split(...) stream tags used by generate_topology
constexpr std::uint64_t kSizesStream = 0;
constexpr std::uint64_t kAssignStream = 1;
constexpr std::uint64_t kSubnetStreamBase = 2;

void shuffle(std::vector<std::uint32_t>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = rng.next_below(i);
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace

std::vector<std::uint32_t> sample_subnetwork_sizes(std::uint32_t total_vms, double alpha,
                                                   std::uint32_t s_min, std::uint32_t s_max,
                                                   Rng& rng) {
    if (s_min < 1 || s_max < s_min) {
        throw std::invalid_argument("sub-network size bounds must satisfy 1 <= s_min <= s_max");
    }
    if (total_vms < s_min) {
        throw std::invalid_argument("total VM count " + std::to_string(total_vms) +
                                    " is below the minimum sub-network size " +
                                    std::to_string(s_min));
    }

    std::vector<double> cumulative(s_max - s_min + 1);
    double acc = 0.0;
    for (std::uint32_t s = s_min; s <= s_max; ++s) {
        acc += std::pow(static_cast<double>(s), -alpha);
        cumulative[s - s_min] = acc;
    }

    std::vector<std::uint32_t> sizes;
    std::uint64_t sum = 0;
    while (sum < total_vms) {
        const double u = rng.next_double() * acc;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        std::uint32_t s = s_min + static_cast<std::uint32_t>(
                                      std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                               cumulative.size() - 1));
        if (sum + s > total_vms) s = static_cast<std::uint32_t>(total_vms - sum);
        sizes.push_back(s);
        sum += s;
    }

    if (sizes.size() >= 2 && sizes.back() < s_min) {
        sizes[sizes.size() - 2] += sizes.back();
        sizes.pop_back();
    }
    return sizes;
}

std::vector<UndirectedEdge> generate_subnetwork(std::uint32_t size, std::uint32_t m, Rng& rng) {
    if (m < 1) throw std::invalid_argument("attachment parameter m must be >= 1");
    if (size < m + 1) {
        throw std::invalid_argument("sub-network size " + std::to_string(size) +
                                    " is below the seed clique size " + std::to_string(m + 1));
    }

    std::vector<UndirectedEdge> edges;
    edges.reserve(static_cast<std::size_t>(m) * (m + 1) / 2 +
                  static_cast<std::size_t>(size - m - 1) * m);
    // endpoint multiset; picking a uniform entry realizes degree-proportional choice
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * edges.capacity());

    for (NodeId u = 0; u <= m; ++u) {
        for (NodeId v = u + 1; v <= m; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }

    std::vector<NodeId> chosen;
    chosen.reserve(m);
    for (NodeId v = m + 1; v < size; ++v) {
        chosen.clear();
        while (chosen.size() < m) {
            const NodeId target = endpoints[rng.next_below(endpoints.size())];
            if (std::find(chosen.begin(), chosen.end(), target) == chosen.end()) {
                chosen.push_back(target);
            }
        }
        for (const NodeId target : chosen) {
            edges.emplace_back(std::min(v, target), std::max(v, target));
            endpoints.push_back(v);
            endpoints.push_back(target);
        }
    }
    return edges;
}

std::vector<std::uint32_t> assign_hosts(std::uint32_t total_vms, std::uint32_t host_count,
                                        std::uint32_t vms_per_host, Rng& rng) {
    if (static_cast<std::uint64_t>(host_count) * vms_per_host != total_vms) {
        throw std::invalid_argument("VM count " + std::to_string(total_vms) +
                                    " does not equal host_count * vms_per_host");
    }
    std::vector<std::uint32_t> order(total_vms);
    std::iota(order.begin(), order.end(), 0u);
    shuffle(order, rng);

    std::vector<std::uint32_t> host_of(total_vms);
    for (std::uint32_t i = 0; i < total_vms; ++i) {
        host_of[order[i]] = i / vms_per_host;
    }
    return host_of;
}

LayeredTopology generate_topology(const GenConfig& config) {
    if (config.host_count < 1 || config.vms_per_host < 1) {
        throw std::invalid_argument("host_count and vms_per_host must be >= 1");
    }
    if (config.s_min < config.m + 1) {
        throw std::invalid_argument("s_min must be at least m+1 to seed each sub-network");
    }
    if (config.s_max < config.s_min) {
        throw std::invalid_argument("s_max must be >= s_min");
    }
    const std::uint64_t total64 =
        static_cast<std::uint64_t>(config.host_count) * config.vms_per_host;
    if (total64 > UINT32_MAX) throw std::invalid_argument("topology too large");
    const std::uint32_t total_vms = static_cast<std::uint32_t>(total64);
    if (total_vms < config.s_min) {
        throw std::invalid_argument("host_count * vms_per_host must be >= s_min");
    }

    const Rng root(config.seed);

    Rng sizes_rng = root.split(kSizesStream);
    const auto sizes = sample_subnetwork_sizes(total_vms, config.alpha, config.s_min,
                                               config.s_max, sizes_rng);

    LayeredTopology topology;
    topology.host_count = config.host_count;
    topology.vms_per_host = config.vms_per_host;
    topology.subnetworks.reserve(sizes.size());

    NodeId base = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        Subnetwork subnet;
        subnet.id = static_cast<std::uint32_t>(i);
        subnet.members.resize(sizes[i]);
        std::iota(subnet.members.begin(), subnet.members.end(), base);

        Rng subnet_rng = root.split(kSubnetStreamBase + i);
        for (const auto& [u, v] : generate_subnetwork(sizes[i], config.m, subnet_rng)) {
            subnet.edges.emplace_back(base + u, base + v);
        }
        base += sizes[i];
        topology.subnetworks.push_back(std::move(subnet));
    }

    Rng assign_rng = root.split(kAssignStream);
    topology.host_of_vm =
        assign_hosts(total_vms, config.host_count, config.vms_per_host, assign_rng);
    return topology;
}

LabeledGraph simplify(const LayeredTopology& topology) {
    std::uint64_t total_vms = 0;
    for (const auto& subnet : topology.subnetworks) total_vms += subnet.members.size();
    if (total_vms != topology.host_of_vm.size()) {
        throw std::invalid_argument("host assignment does not cover every VM exactly once");
    }
    const NodeId vm_count = static_cast<NodeId>(total_vms);

    std::vector<NodeKind> kinds(vm_count + topology.host_count, NodeKind::Vm);
    std::fill(kinds.begin() + vm_count, kinds.end(), NodeKind::Host);

    LabeledGraph network;
    network.subnet_of.assign(kinds.size(), -1);
    network.host_of.assign(kinds.size(), -1);

    std::vector<UndirectedEdge> edges;
    for (const auto& subnet : topology.subnetworks) {
        for (const NodeId vm : subnet.members) {
            network.subnet_of[vm] = static_cast<std::int32_t>(subnet.id);
        }
        edges.insert(edges.end(), subnet.edges.begin(), subnet.edges.end());
    }
    for (NodeId vm = 0; vm < vm_count; ++vm) {
        const NodeId host_node = vm_count + topology.host_of_vm[vm];
        network.host_of[vm] = static_cast<std::int32_t>(host_node);
        edges.emplace_back(vm, host_node);
    }

    network.graph = Graph(std::move(kinds), std::move(edges));
    return network;
}

}  // namespace cloudnet
