#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cloudnet {

using NodeId = std::uint32_t;
using HalfEdgeId = std::uint32_t;

enum class NodeKind : std::uint8_t { Vm, Host };

const char* to_token(NodeKind kind);
NodeKind node_kind_from_token(const std::string& token);

using UndirectedEdge = std::pair<NodeId, NodeId>;

// Per-node survival flags for cascade bookkeeping; 1 = alive.
using AliveMask = std::vector<std::uint8_t>;

// Immutable undirected graph in CSR form. Every undirected edge {u, v}
// contributes two half-edges; the half-edge stored in u's adjacency slice
// carries the message flowing u <- v. Half-edge ids are the CSR slot
// indices, so per-node products are contiguous scans.
//
// Construction collapses duplicate input pairs and rejects self-loops,
// out-of-range endpoints and host-host edges (the physical layer has no
// internal edges in the simplified model).
class Graph {
public:
    Graph() = default;
    Graph(std::vector<NodeKind> kinds, std::vector<UndirectedEdge> edges);

    std::size_t node_count() const { return kinds_.size(); }
    std::size_t edge_count() const { return adjacency_.size() / 2; }
    std::size_t half_edge_count() const { return adjacency_.size(); }

    NodeKind kind(NodeId v) const { return kinds_[v]; }
    std::uint32_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    // CSR slot range [first, last) of node v's half-edges.
    std::pair<HalfEdgeId, HalfEdgeId> half_edges(NodeId v) const {
        return {offsets_[v], offsets_[v + 1]};
    }

    // half-edge e carries head(e) <- tail(e)
    NodeId head(HalfEdgeId e) const { return heads_[e]; }
    NodeId tail(HalfEdgeId e) const { return adjacency_[e]; }

    // the opposite half-edge of the same undirected edge; an involution
    HalfEdgeId reverse(HalfEdgeId e) const { return reverse_[e]; }

private:
    std::vector<NodeKind> kinds_;
    std::vector<std::uint32_t> offsets_;
    std::vector<NodeId> adjacency_;
    std::vector<NodeId> heads_;
    std::vector<HalfEdgeId> reverse_;
};

// Size of the largest connected component of the subgraph induced by alive
// nodes; 0 when nothing is alive. Iterative traversal, no recursion.
std::size_t largest_connected_component(const Graph& graph, const AliveMask& alive);

}  // namespace cloudnet
