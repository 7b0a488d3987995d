#pragma once

#include <cstdint>
#include <vector>

#include "cloudnet/graph.hpp"
#include "cloudnet/graph_io.hpp"
#include "cloudnet/rng.hpp"

namespace cloudnet {

struct GenConfig {
    std::uint32_t host_count = 0;
    std::uint32_t vms_per_host = 0;
    std::uint32_t s_min = 3;       // smallest sub-network size
    std::uint32_t s_max = 500;     // largest sub-network size
    double alpha = 2.5;            // size-distribution exponent, Pr(s) ~ s^-alpha
    std::uint32_t m = 2;           // attachment edges per new vertex
    std::uint64_t seed = 0;
};

struct Subnetwork {
    std::uint32_t id = 0;
    std::vector<NodeId> members;        // global VM ids, consecutive
    std::vector<UndirectedEdge> edges;  // internal edges on global VM ids
};

struct LayeredTopology {
    std::uint32_t host_count = 0;
    std::uint32_t vms_per_host = 0;
    std::vector<Subnetwork> subnetworks;
    std::vector<std::uint32_t> host_of_vm;  // VM id -> host index in [0, host_count)
};

// Sub-network sizes drawn i.i.d. from the truncated discrete power law
// Pr(s) ~ s^-alpha on [s_min, s_max] until the running sum reaches
// total_vms; the final draw is clamped so the sum is exact, and a clamped
// remainder below s_min is merged into the previous sub-network.
std::vector<std::uint32_t> sample_subnetwork_sizes(std::uint32_t total_vms, double alpha,
                                                   std::uint32_t s_min, std::uint32_t s_max,
                                                   Rng& rng);

// Scale-free sub-network by preferential attachment: complete graph on m+1
// seed vertices, then every new vertex attaches to m distinct existing
// vertices with probability proportional to current degree. Connected by
// construction; edge count is m(m+1)/2 + (size-m-1)*m. Local ids 0..size-1.
std::vector<UndirectedEdge> generate_subnetwork(std::uint32_t size, std::uint32_t m, Rng& rng);

// Uniformly random permutation of the VMs cut into consecutive blocks of
// vms_per_host; block k lands on host k, so every host is filled exactly.
std::vector<std::uint32_t> assign_hosts(std::uint32_t total_vms, std::uint32_t host_count,
                                        std::uint32_t vms_per_host, Rng& rng);

LayeredTopology generate_topology(const GenConfig& config);

// Collapse the two layers into one graph: all VMs plus all hosts, with the
// sub-network edges and one VM-host edge per VM. Host-host edges are
// omitted by construction. VM ids keep their topology ids; host k becomes
// node total_vms + k.
LabeledGraph simplify(const LayeredTopology& topology);

}  // namespace cloudnet
