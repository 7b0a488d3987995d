// Shared helpers for the test binaries. No framework: every test is a
// main() that prints progress and exits nonzero on the first failure.
#pragma once

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cloudnet/graph.hpp"
#include "cloudnet/rng.hpp"

#define CHECK(...)                                                             \
    do {                                                                       \
        if (!(__VA_ARGS__)) {                                                  \
            std::cerr << __FILE__ << ":" << __LINE__                           \
                      << ": CHECK failed: " #__VA_ARGS__ << "\n";              \
            std::exit(1);                                                      \
        }                                                                      \
    } while (0)

#define CHECK_CLOSE(a, b, tol)                                                 \
    do {                                                                       \
        const double check_a = (a);                                            \
        const double check_b = (b);                                            \
        if (!(std::abs(check_a - check_b) <= (tol))) {                         \
            std::cerr << __FILE__ << ":" << __LINE__ << ": CHECK_CLOSE failed: " \
                      << #a " = " << check_a << " vs " #b " = " << check_b     \
                      << " (tol " << (tol) << ")\n";                           \
            std::exit(1);                                                      \
        }                                                                      \
    } while (0)

#define CHECK_THROWS(...)                                                      \
    do {                                                                       \
        bool check_caught = false;                                             \
        try {                                                                  \
            __VA_ARGS__;                                                       \
        } catch (const std::exception&) {                                      \
            check_caught = true;                                               \
        }                                                                      \
        if (!check_caught) {                                                   \
            std::cerr << __FILE__ << ":" << __LINE__                           \
                      << ": CHECK_THROWS failed: " #__VA_ARGS__ << "\n";       \
            std::exit(1);                                                      \
        }                                                                      \
    } while (0)

namespace testsupport {

inline void section(const std::string& name) { std::cout << "-- " << name << "\n"; }

// One-sided sign test: p-value for H1 "differences lean positive".
// Zero differences are dropped, per the usual convention.
inline double sign_test_p_greater(const std::vector<double>& diffs) {
    std::size_t nonzero = 0, positive = 0;
    for (const double d : diffs) {
        if (d > 0.0) ++positive;
        if (d != 0.0) ++nonzero;
    }
    if (nonzero == 0) return 1.0;
    // P(Bin(nonzero, 1/2) >= positive)
    double term = std::ldexp(1.0, -static_cast<int>(nonzero));  // C(n,0)/2^n
    double tail = 0.0;
    for (std::size_t j = 0; j <= nonzero; ++j) {
        if (j >= positive) tail += term;
        term *= static_cast<double>(nonzero - j) / static_cast<double>(j + 1);
    }
    return tail;
}

// Uniformly random tree by random attachment; node i>0 links to a uniform
// earlier node.
inline std::vector<cloudnet::UndirectedEdge> random_tree(std::uint32_t n, cloudnet::Rng& rng) {
    std::vector<cloudnet::UndirectedEdge> edges;
    for (std::uint32_t v = 1; v < n; ++v) {
        const auto u = static_cast<cloudnet::NodeId>(rng.next_below(v));
        edges.emplace_back(u, v);
    }
    return edges;
}

// Forest: each non-root node starts a new component with probability
// root_prob, otherwise attaches to a uniform earlier node.
inline std::vector<cloudnet::UndirectedEdge> random_forest(std::uint32_t n, double root_prob,
                                                           cloudnet::Rng& rng) {
    std::vector<cloudnet::UndirectedEdge> edges;
    for (std::uint32_t v = 1; v < n; ++v) {
        if (rng.bernoulli(root_prob)) continue;
        const auto u = static_cast<cloudnet::NodeId>(rng.next_below(v));
        edges.emplace_back(u, v);
    }
    return edges;
}

// Simple d-regular graph via the configuration model with whole-shuffle
// rejection of self-loops and parallel edges.
inline std::vector<cloudnet::UndirectedEdge> random_regular_graph(std::uint32_t n,
                                                                  std::uint32_t d,
                                                                  cloudnet::Rng& rng) {
    if ((static_cast<std::uint64_t>(n) * d) % 2 != 0) {
        throw std::invalid_argument("n*d must be even");
    }
    std::vector<cloudnet::NodeId> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (cloudnet::NodeId v = 0; v < n; ++v) {
        for (std::uint32_t k = 0; k < d; ++k) stubs.push_back(v);
    }

    for (int attempt = 0; attempt < 1000; ++attempt) {
        for (std::size_t i = stubs.size(); i > 1; --i) {
            const std::size_t j = rng.next_below(i);
            std::swap(stubs[i - 1], stubs[j]);
        }
        std::set<std::pair<cloudnet::NodeId, cloudnet::NodeId>> seen;
        bool simple = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            const auto u = std::min(stubs[i], stubs[i + 1]);
            const auto v = std::max(stubs[i], stubs[i + 1]);
            if (u == v || !seen.emplace(u, v).second) {
                simple = false;
                break;
            }
        }
        if (simple) {
            std::vector<cloudnet::UndirectedEdge> edges(seen.begin(), seen.end());
            return edges;
        }
    }
    throw std::runtime_error("could not realize a simple regular graph");
}

inline std::vector<cloudnet::NodeKind> all_vm(std::size_t n) {
    return std::vector<cloudnet::NodeKind>(n, cloudnet::NodeKind::Vm);
}

// OLS slope of y over x
inline double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Log-binned slope of a discrete sample histogram over [lo, hi]: densities
// are counts divided by bin width, fitted against bin geometric centers on
// log-log axes. Bins with no mass are skipped.
inline double log_binned_slope(const std::vector<std::uint32_t>& samples, double lo, double hi,
                               int bins_per_decade = 8) {
    const double decades = std::log10(hi / lo);
    const int bin_count = std::max(2, static_cast<int>(std::ceil(decades * bins_per_decade)));
    const double ratio = std::pow(hi / lo, 1.0 / bin_count);

    std::vector<double> counts(bin_count, 0.0);
    for (const std::uint32_t s : samples) {
        if (s < lo || s > hi) continue;
        int b = static_cast<int>(std::log(static_cast<double>(s) / lo) / std::log(ratio));
        if (b >= bin_count) b = bin_count - 1;
        counts[b] += 1.0;
    }

    std::vector<double> xs, ys;
    for (int b = 0; b < bin_count; ++b) {
        if (counts[b] <= 0.0) continue;
        const double left = lo * std::pow(ratio, b);
        const double right = left * ratio;
        xs.push_back(std::log((left + right) / 2.0));
        ys.push_back(std::log(counts[b] / (right - left)));
    }
    if (xs.size() < 2) throw std::runtime_error("not enough occupied bins for a slope fit");
    return regression_slope(xs, ys);
}

}  // namespace testsupport
