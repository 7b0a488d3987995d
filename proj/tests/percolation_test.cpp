#include <algorithm>

#include "cloudnet/immunity.hpp"
#include "cloudnet/percolation.hpp"
#include "support.hpp"

using namespace cloudnet;
using namespace testsupport;

namespace {

EdgeProbabilities uniform_probs(const Graph& g, double p) {
    return EdgeProbabilities(g.half_edge_count(), p);
}

void test_scalar_basics() {
    section("scalar solver basics");

    // p = 0 everywhere: nothing is occupied, messages saturate at 1
    const Graph square(all_vm(4), {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const auto zero = solve_scalar(square, uniform_probs(square, 0.0));
    for (const double h : zero.h) CHECK(h == 1.0);
    CHECK(zero.giant_fraction == 0.0);

    // a single edge: both endpoints are leaves, so h = 1 for any p
    const Graph pair(all_vm(2), {{0, 1}});
    const auto leaf = solve_scalar(pair, uniform_probs(pair, 0.7));
    for (const double h : leaf.h) CHECK(h == 1.0);
    CHECK(leaf.giant_fraction == 0.0);

    // finite trees never percolate and the solve is exact
    Rng rng(31);
    for (int round = 0; round < 5; ++round) {
        const auto edges = random_tree(40, rng);
        const Graph tree(all_vm(40), edges);
        const auto solution = solve_scalar(tree, uniform_probs(tree, 0.95));
        CHECK(solution.giant_fraction == 0.0);
    }

    CHECK_THROWS(solve_scalar(pair, EdgeProbabilities{0.5}));        // wrong length
    CHECK_THROWS(solve_scalar(pair, EdgeProbabilities{0.5, 1.5}));   // out of range
    CHECK_THROWS(solve_scalar(pair, uniform_probs(pair, 0.5), 0.0)); // bad tolerance
}

void test_scalar_analytic() {
    section("scalar solver vs closed form on a 3-regular graph");

    Rng rng(101);
    const std::uint32_t n = 2000;
    const Graph g(all_vm(n), random_regular_graph(n, 3, rng));
    CHECK(g.edge_count() == 3 * n / 2);

    // h = 1 - p + p h^2 has physical root (1-p)/p; S = 1 - h^3
    const double p = 0.9;
    const auto solution = solve_scalar(g, uniform_probs(g, p));
    const double h_analytic = (1.0 - p) / p;
    const double s_analytic = 1.0 - h_analytic * h_analytic * h_analytic;
    CHECK_CLOSE(solution.giant_fraction, s_analytic, 1e-2);
    CHECK(solution.iterations < 200);

    // the recomputable identity S = 1 - mean of per-node products
    CHECK(solution.giant_fraction == giant_fraction(g, solution.h));

    // every h stays inside [0,1]
    for (const double h : solution.h) CHECK(h >= 0.0 && h <= 1.0);
}

void test_monotone_iteration() {
    section("monotone synchronous iteration");

    Rng rng(8);
    std::vector<UndirectedEdge> edges;
    const std::uint32_t n = 60;
    for (int k = 0; k < 120; ++k) {
        const auto u = static_cast<NodeId>(rng.next_below(n));
        const auto v = static_cast<NodeId>(rng.next_below(n));
        if (u != v) edges.emplace_back(u, v);
    }
    const Graph g(all_vm(n), edges);
    EdgeProbabilities probs(g.half_edge_count());
    for (HalfEdgeId e = 0; e < probs.size(); ++e) {
        const HalfEdgeId r = g.reverse(e);
        if (e < r) continue;
        probs[e] = probs[r] = rng.next_double();
    }

    // iterates grow toward the fixed point
    std::vector<double> previous(g.half_edge_count(), 0.0);
    for (std::size_t t = 1; t <= 30; ++t) {
        const auto current = iterate_messages(g, probs, t);
        for (HalfEdgeId e = 0; e < current.size(); ++e) {
            CHECK(current[e] >= previous[e]);
            CHECK(current[e] >= 0.0 && current[e] <= 1.0);
        }
        previous = current;
    }

    // S never increases with the removed fraction; fixed iteration count
    // keeps the comparison exact
    const auto p_imu = std::vector<double>(n, 0.8);
    double previous_s = 1.0;
    for (int i = 0; i <= 9; ++i) {
        const double eta = 0.1 * i;
        const auto occupation = edge_probabilities(g, p_imu, eta);
        const double s = giant_fraction(g, iterate_messages(g, occupation, 80));
        CHECK(s <= previous_s);
        previous_s = s;
    }

    // adding protection never lowers S
    Rng selector(99);
    const auto protected_set = select_immune_set(g, 0.2, ProtectStrategy::Degree, selector);
    const auto membership =
        membership_probabilities(n, protected_set, ProtectStrategy::Degree, 0.2);
    const auto plain = edge_probabilities(g, p_imu, 0.3);
    const auto shielded = edge_probabilities_protected(g, p_imu, 0.3, membership);
    const double s_plain = giant_fraction(g, iterate_messages(g, plain, 80));
    const double s_shielded = giant_fraction(g, iterate_messages(g, shielded, 80));
    CHECK(s_shielded >= s_plain);

    // non-convergence carries the residual
    const Graph clique(all_vm(30), [] {
        std::vector<UndirectedEdge> e;
        for (NodeId u = 0; u < 30; ++u)
            for (NodeId v = u + 1; v < 30; ++v) e.emplace_back(u, v);
        return e;
    }());
    try {
        solve_scalar(clique, uniform_probs(clique, 0.9), 1e-10, 1);
        CHECK(false);
    } catch (const ConvergenceError& e) {
        CHECK(e.residual() > 0.0);
    }
}

void test_polynomial_small_cases() {
    section("polynomial mode, hand-checked cases");

    // isolated node: G(z) = z
    const Graph lone(all_vm(1), {});
    const auto lone_poly = solve_polynomial(lone, {}, 4);
    CHECK(lone_poly.pi(0, 1) == 1.0);
    CHECK(lone_poly.pi(0, 2) == 0.0);
    CHECK_CLOSE(lone_poly.finite_cluster_mass(0), 1.0, 1e-15);

    // two nodes: pi(1) = 1-p, pi(2) = p
    const Graph pair(all_vm(2), {{0, 1}});
    const double p = 0.37;
    const auto pair_poly = solve_polynomial(pair, uniform_probs(pair, p), 4);
    CHECK_CLOSE(pair_poly.pi(0, 1), 1.0 - p, 1e-15);
    CHECK_CLOSE(pair_poly.pi(0, 2), p, 1e-15);
    CHECK(!pair_poly.cycle_warning);

    // path a-b-c, center: (1-p)^2, 2p(1-p), p^2
    const Graph path(all_vm(3), {{0, 1}, {1, 2}});
    const auto path_poly = solve_polynomial(path, uniform_probs(path, p), 4);
    CHECK_CLOSE(path_poly.pi(1, 1), (1 - p) * (1 - p), 1e-15);
    CHECK_CLOSE(path_poly.pi(1, 2), 2 * p * (1 - p), 1e-15);
    CHECK_CLOSE(path_poly.pi(1, 3), p * p, 1e-15);

    // cycles get flagged
    const Graph triangle(all_vm(3), {{0, 1}, {1, 2}, {0, 2}});
    CHECK(solve_polynomial(triangle, uniform_probs(triangle, 0.5), 4).cycle_warning);
    CHECK(solve_polynomial(path, uniform_probs(path, 0.5), 2).truncated);

    // even off the forest guarantee, coefficients stay non-negative and
    // the finite-cluster mass never exceeds 1
    Rng rng(71);
    std::vector<UndirectedEdge> loopy_edges;
    for (int k = 0; k < 40; ++k) {
        const auto u = static_cast<NodeId>(rng.next_below(16));
        const auto v = static_cast<NodeId>(rng.next_below(16));
        if (u != v) loopy_edges.emplace_back(u, v);
    }
    const Graph loopy(all_vm(16), loopy_edges);
    const auto approx = solve_polynomial(loopy, uniform_probs(loopy, 0.9), 30);
    CHECK(approx.cycle_warning);
    for (NodeId v = 0; v < 16; ++v) {
        for (std::size_t s = 0; s <= 30; ++s) CHECK(approx.pi(v, s) >= 0.0);
        CHECK(approx.finite_cluster_mass(v) <= 1.0 + 1e-12);
    }
}

void test_brute_force_oracle() {
    section("brute-force oracle");

    const Graph pair(all_vm(2), {{0, 1}});
    const auto half = brute_force_cluster_distribution(pair, uniform_probs(pair, 0.5));
    CHECK_CLOSE(half.pi(0, 1), 0.5, 1e-15);
    CHECK_CLOSE(half.pi(0, 2), 0.5, 1e-15);

    const Graph triangle(all_vm(3), {{0, 1}, {1, 2}, {0, 2}});
    const auto certain = brute_force_cluster_distribution(triangle, uniform_probs(triangle, 1.0));
    for (NodeId v = 0; v < 3; ++v) CHECK(certain.pi(v, 3) == 1.0);

    // cost guard and symmetry requirement
    Rng rng(4);
    const Graph wide(all_vm(30), random_tree(30, rng));
    CHECK(wide.edge_count() == 29);
    CHECK_THROWS(brute_force_cluster_distribution(wide, uniform_probs(wide, 0.5)));

    EdgeProbabilities lopsided(pair.half_edge_count(), 0.5);
    lopsided[0] = 0.4;
    CHECK_THROWS(brute_force_cluster_distribution(pair, lopsided));
}

void test_oracle_equivalence_on_forests() {
    section("polynomial mode matches the oracle on random forests");

    Rng rng(2718);
    for (int round = 0; round < 25; ++round) {
        const auto n = static_cast<std::uint32_t>(1 + rng.next_below(8));
        const Graph g(all_vm(n), random_forest(n, 0.3, rng));

        EdgeProbabilities probs(g.half_edge_count());
        for (HalfEdgeId e = 0; e < probs.size(); ++e) {
            const HalfEdgeId r = g.reverse(e);
            if (e < r) continue;
            probs[e] = probs[r] = rng.next_double();
        }

        const auto expected = brute_force_cluster_distribution(g, probs);
        const auto actual = solve_polynomial(g, probs, n);
        CHECK(!actual.cycle_warning);
        for (NodeId v = 0; v < n; ++v) {
            for (std::size_t s = 0; s <= n; ++s) {
                CHECK_CLOSE(actual.pi(v, s), expected.pi(v, s), 1e-12);
            }
            // finite graphs keep all mass in finite clusters
            CHECK_CLOSE(actual.finite_cluster_mass(v), 1.0, 1e-12);
        }
    }
}

}  // namespace

int main() {
    test_scalar_basics();
    test_scalar_analytic();
    test_monotone_iteration();
    test_polynomial_small_cases();
    test_brute_force_oracle();
    test_oracle_equivalence_on_forests();
    std::cout << "percolation tests passed\n";
    return 0;
}
