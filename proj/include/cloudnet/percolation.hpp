#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "cloudnet/graph.hpp"

namespace cloudnet {

// Occupation probability per half-edge, aligned with Graph's half-edge ids.
using EdgeProbabilities = std::vector<double>;

struct PercolationSolution {
    std::vector<double> h;        // fixed-point message value per half-edge
    double giant_fraction = 0.0;  // expected fraction in the percolating cluster
    std::size_t iterations = 0;
    double residual = 0.0;        // max per-edge change at termination
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Runs exactly `iterations` synchronous sweeps of the message update
//   h[i<-j] = 1 - p[i<-j] * (1 - prod over k in N(j)\{i} of h[j<-k])
// starting from h = 0. The update is evaluated in this rearranged form so
// the iterates are monotone non-decreasing in floating point, which the
// sweep checks. Running two parameter sets for the same iteration count
// makes their giant fractions exactly comparable.
std::vector<double> iterate_messages(const Graph& graph, const EdgeProbabilities& probs,
                                     std::size_t iterations);

// 1 - (1/n) * sum over nodes of prod over incident half-edges of h.
double giant_fraction(const Graph& graph, std::span<const double> h);

// Iterates from h = 0 until the largest per-edge change drops below
// tolerance; throws ConvergenceError if max_iterations sweeps are not
// enough. Starting at zero selects the physical (smallest) fixed point;
// h = 1 is always a trivial one.
PercolationSolution solve_scalar(const Graph& graph, const EdgeProbabilities& probs,
                                 double tolerance = 1e-10, std::size_t max_iterations = 10000);

// Cluster-size generating functions, truncated at s_cap:
//   node_generating[i][s] = pi_i(s), the probability that node i sits in a
//                           finite cluster of exactly s nodes
//   edge_generating[e][s] = coefficient s of H for half-edge e
// Exact on forests; on graphs with cycles the result is the message-passing
// approximation and cycle_warning is set.
struct ClusterPolynomials {
    std::size_t s_cap = 0;
    std::vector<std::vector<double>> node_generating;
    std::vector<std::vector<double>> edge_generating;
    bool cycle_warning = false;
    bool truncated = false;

    double pi(NodeId i, std::size_t s) const {
        const auto& poly = node_generating[i];
        return s < poly.size() ? poly[s] : 0.0;
    }
    // total mass in finite clusters; the deficit from 1 is the probability
    // of belonging to the percolating cluster
    double finite_cluster_mass(NodeId i) const {
        double sum = 0.0;
        for (const double c : node_generating[i]) sum += c;
        return sum;
    }
};

// Coefficient-level fixed point of the polynomial message update
// (validation tool; cost grows quickly with graph size, and s_cap is
// capped at 10000).
ClusterPolynomials solve_polynomial(const Graph& graph, const EdgeProbabilities& probs,
                                    std::size_t s_cap);

// Exact cluster-size distribution by enumerating all 2^m edge-occupation
// states. Requires symmetric probabilities (p[e] == p[reverse(e)]) and at
// most 20 undirected edges. Independent of the message-passing path; used
// as its oracle.
ClusterPolynomials brute_force_cluster_distribution(const Graph& graph,
                                                    const EdgeProbabilities& probs);

}  // namespace cloudnet
