#include "cloudnet/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace cloudnet {

const char* to_token(NodeKind kind) {
    return kind == NodeKind::Vm ? "vm" : "host";
}

NodeKind node_kind_from_token(const std::string& token) {
    if (token == "vm") return NodeKind::Vm;
    if (token == "host") return NodeKind::Host;
    throw std::invalid_argument("unknown node kind '" + token + "'");
}

namespace {

std::string pair_str(NodeId u, NodeId v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

Graph::Graph(std::vector<NodeKind> kinds, std::vector<UndirectedEdge> edges)
    : kinds_(std::move(kinds)) {
    const std::size_t n = kinds_.size();

    for (auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw std::invalid_argument("edge " + pair_str(u, v) +
                                        " references a node outside 0.." +
                                        std::to_string(n == 0 ? 0 : n - 1));
        }
        if (u == v) {
            throw std::invalid_argument("self-loop on node " + std::to_string(u));
        }
        if (kinds_[u] == NodeKind::Host && kinds_[v] == NodeKind::Host) {
            throw std::invalid_argument("host-host edge " + pair_str(u, v) +
                                        " is not allowed");
        }
        if (u > v) std::swap(u, v);
    }

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : edges) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) offsets_[i] += offsets_[i - 1];

    adjacency_.resize(2 * edges.size());
    heads_.resize(2 * edges.size());
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // The edge list is sorted lexicographically, so each node's slice fills
    // with ascending neighbor ids and needs no per-node sort.
    for (const auto& [u, v] : edges) {
        adjacency_[cursor[u]] = v;
        heads_[cursor[u]++] = u;
        adjacency_[cursor[v]] = u;
        heads_[cursor[v]++] = v;
    }

    reverse_.resize(adjacency_.size());
    for (HalfEdgeId e = 0; e < adjacency_.size(); ++e) {
        const NodeId u = heads_[e];
        const NodeId v = adjacency_[e];
        const auto first = adjacency_.begin() + offsets_[v];
        const auto last = adjacency_.begin() + offsets_[v + 1];
        const auto it = std::lower_bound(first, last, u);
        reverse_[e] = static_cast<HalfEdgeId>(it - adjacency_.begin());
    }
}

std::size_t largest_connected_component(const Graph& graph, const AliveMask& alive) {
    const std::size_t n = graph.node_count();
    if (alive.size() != n) {
        throw std::invalid_argument("alive mask length does not match node count");
    }

    std::vector<std::uint8_t> seen(n, 0);
    std::vector<NodeId> queue;
    queue.reserve(n);
    std::size_t best = 0;

    for (NodeId start = 0; start < n; ++start) {
        if (!alive[start] || seen[start]) continue;
        queue.clear();
        queue.push_back(start);
        seen[start] = 1;
        std::size_t head = 0;
        while (head < queue.size()) {
            const NodeId u = queue[head++];
            for (const NodeId v : graph.neighbors(u)) {
                if (alive[v] && !seen[v]) {
                    seen[v] = 1;
                    queue.push_back(v);
                }
            }
        }
        best = std::max(best, queue.size());
    }
    return best;
}

}  // namespace cloudnet
