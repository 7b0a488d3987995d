#include "cloudnet/percolation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cloudnet {

namespace {

void validate_probs(const Graph& graph, const EdgeProbabilities& probs) {
    if (probs.size() != graph.half_edge_count()) {
        throw std::invalid_argument("probability vector length does not match half-edge count");
    }
    for (const double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("occupation probabilities must lie in [0,1]");
        }
    }
}

// excl[e] = product of h over head(e)'s other half-edges (prefix * suffix)
void exclusion_products(const Graph& graph, std::span<const double> h,
                        std::span<double> excl) {
    const std::size_t n = graph.node_count();
    for (NodeId v = 0; v < n; ++v) {
        const auto [first, last] = graph.half_edges(v);
        double acc = 1.0;
        for (HalfEdgeId e = first; e < last; ++e) {
            excl[e] = acc;
            acc *= h[e];
        }
        acc = 1.0;
        for (HalfEdgeId e = last; e > first; --e) {
            excl[e - 1] *= acc;
            acc *= h[e - 1];
        }
    }
}

// One synchronous sweep; returns the largest per-edge increase and checks
// that no message decreased (the update map is monotone from h = 0).
double message_sweep(const Graph& graph, const EdgeProbabilities& probs,
                     std::span<const double> h_old, std::span<double> h_new,
                     std::span<double> excl) {
    exclusion_products(graph, h_old, excl);
    double residual = 0.0;
    for (HalfEdgeId e = 0; e < h_old.size(); ++e) {
        const double upstream = excl[graph.reverse(e)];
        const double value = 1.0 - probs[e] * (1.0 - upstream);
        const double change = value - h_old[e];
        if (change < 0.0) {
            throw std::logic_error("message iteration decreased; monotonicity violated");
        }
        residual = std::max(residual, change);
        h_new[e] = value;
    }
    return residual;
}

}  // namespace

std::vector<double> iterate_messages(const Graph& graph, const EdgeProbabilities& probs,
                                     std::size_t iterations) {
    validate_probs(graph, probs);
    std::vector<double> h(graph.half_edge_count(), 0.0);
    std::vector<double> h_next(h.size());
    std::vector<double> excl(h.size());
    for (std::size_t iter = 0; iter < iterations; ++iter) {
        message_sweep(graph, probs, h, h_next, excl);
        h.swap(h_next);
    }
    return h;
}

double giant_fraction(const Graph& graph, std::span<const double> h) {
    const std::size_t n = graph.node_count();
    if (h.size() != graph.half_edge_count()) {
        throw std::invalid_argument("message vector length does not match half-edge count");
    }
    if (n == 0) return 0.0;
    double sum = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        const auto [first, last] = graph.half_edges(v);
        double prod = 1.0;
        for (HalfEdgeId e = first; e < last; ++e) prod *= h[e];
        sum += prod;
    }
    return 1.0 - sum / static_cast<double>(n);
}

PercolationSolution solve_scalar(const Graph& graph, const EdgeProbabilities& probs,
                                 double tolerance, std::size_t max_iterations) {
    validate_probs(graph, probs);
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

    std::vector<double> h(graph.half_edge_count(), 0.0);
    std::vector<double> h_next(h.size());
    std::vector<double> excl(h.size());

    double residual = 0.0;
    for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
        residual = message_sweep(graph, probs, h, h_next, excl);
        h.swap(h_next);
        if (residual < tolerance) {
            PercolationSolution solution;
            solution.h = std::move(h);
            solution.giant_fraction = giant_fraction(graph, solution.h);
            solution.iterations = iter;
            solution.residual = residual;
            return solution;
        }
    }
    throw ConvergenceError("percolation solve did not converge within " +
                               std::to_string(max_iterations) +
                               " iterations; residual=" + std::to_string(residual),
                           residual);
}

namespace {

using Poly = std::vector<double>;  // empty = zero polynomial

Poly poly_one() { return Poly{1.0}; }

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0.0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::size_t cap) {
    if (a.empty() || b.empty()) return {};
    Poly out(std::min(cap + 1, a.size() + b.size() - 1), 0.0);
    for (std::size_t i = 0; i < a.size() && i <= cap; ++i) {
        if (a[i] == 0.0) continue;
        const std::size_t j_max = std::min(b.size(), out.size() - i);
        for (std::size_t j = 0; j < j_max; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    poly_trim(out);
    return out;
}

}  // namespace

ClusterPolynomials solve_polynomial(const Graph& graph, const EdgeProbabilities& probs,
                                    std::size_t s_cap) {
    validate_probs(graph, probs);
    if (s_cap < 1) throw std::invalid_argument("s_cap must be >= 1");
    if (s_cap > 10000) {
        throw std::invalid_argument("polynomial mode refused beyond s_cap = 10000");
    }

    const std::size_t half_edges = graph.half_edge_count();
    const std::size_t n = graph.node_count();

    std::vector<Poly> h(half_edges);  // zero polynomials
    std::vector<Poly> h_next(half_edges);
    std::vector<Poly> excl(half_edges);

    // Coefficient s of any message depends only on coefficients below s of
    // the previous sweep, so everything up to s_cap is settled after
    // s_cap + 2 sweeps even in the presence of cycles.
    for (std::size_t iter = 0; iter < s_cap + 2; ++iter) {
        for (NodeId v = 0; v < n; ++v) {
            const auto [first, last] = graph.half_edges(v);
            Poly acc = poly_one();
            for (HalfEdgeId e = first; e < last; ++e) {
                excl[e] = acc;
                acc = poly_mul(acc, h[e], s_cap);
            }
            acc = poly_one();
            for (HalfEdgeId e = last; e > first; --e) {
                excl[e - 1] = poly_mul(excl[e - 1], acc, s_cap);
                acc = poly_mul(acc, h[e - 1], s_cap);
            }
        }
        bool stable = true;
        for (HalfEdgeId e = 0; e < half_edges; ++e) {
            const Poly& upstream = excl[graph.reverse(e)];
            Poly next(std::min(s_cap + 1, upstream.size() + 1), 0.0);
            next[0] = 1.0 - probs[e];
            for (std::size_t s = 0; s + 1 < next.size(); ++s) {
                next[s + 1] = probs[e] * upstream[s];
            }
            poly_trim(next);
            if (next != h[e]) stable = false;
            h_next[e] = std::move(next);
        }
        h.swap(h_next);
        if (stable) break;
    }

    ClusterPolynomials result;
    result.s_cap = s_cap;
    result.edge_generating = h;
    result.node_generating.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        const auto [first, last] = graph.half_edges(v);
        Poly prod = poly_one();
        for (HalfEdgeId e = first; e < last; ++e) prod = poly_mul(prod, h[e], s_cap);
        Poly g(std::min(s_cap + 1, prod.size() + 1), 0.0);
        for (std::size_t s = 0; s + 1 < g.size(); ++s) g[s + 1] = prod[s];
        result.node_generating[v] = std::move(g);
    }

    // cycle detection: any component with as many edges as nodes
    {
        std::vector<NodeId> parent(n);
        std::iota(parent.begin(), parent.end(), 0u);
        auto find = [&](NodeId x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (HalfEdgeId e = 0; e < half_edges; ++e) {
            if (graph.head(e) < graph.tail(e)) {
                const NodeId a = find(graph.head(e));
                const NodeId b = find(graph.tail(e));
                if (a == b) {
                    result.cycle_warning = true;
                    break;
                }
                parent[a] = b;
            }
        }
    }
    result.truncated = s_cap < n;
    return result;
}

ClusterPolynomials brute_force_cluster_distribution(const Graph& graph,
                                                    const EdgeProbabilities& probs) {
    validate_probs(graph, probs);
    const std::size_t n = graph.node_count();
    const std::size_t m = graph.edge_count();
    if (m > 20) {
        throw std::invalid_argument("brute-force enumeration refused beyond 20 edges");
    }

    struct EdgeRecord {
        NodeId u, v;
        double p;
    };
    std::vector<EdgeRecord> edges;
    edges.reserve(m);
    for (HalfEdgeId e = 0; e < graph.half_edge_count(); ++e) {
        if (probs[e] != probs[graph.reverse(e)]) {
            throw std::invalid_argument(
                "brute-force oracle requires symmetric edge probabilities");
        }
        if (graph.head(e) < graph.tail(e)) {
            edges.push_back({graph.head(e), graph.tail(e), probs[e]});
        }
    }

    ClusterPolynomials result;
    result.s_cap = n;
    result.node_generating.assign(n, Poly(n + 1, 0.0));

    std::vector<NodeId> parent(n);
    std::vector<std::uint32_t> size(n);
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        double weight = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            weight *= (mask >> i) & 1 ? edges[i].p : 1.0 - edges[i].p;
        }
        if (weight == 0.0) continue;

        std::iota(parent.begin(), parent.end(), 0u);
        std::fill(size.begin(), size.end(), 1u);
        auto find = [&](NodeId x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t i = 0; i < m; ++i) {
            if (!((mask >> i) & 1)) continue;
            NodeId a = find(edges[i].u);
            NodeId b = find(edges[i].v);
            if (a != b) {
                if (size[a] < size[b]) std::swap(a, b);
                parent[b] = a;
                size[a] += size[b];
            }
        }
        for (NodeId v = 0; v < n; ++v) {
            result.node_generating[v][size[find(v)]] += weight;
        }
    }
    return result;
}

}  // namespace cloudnet
