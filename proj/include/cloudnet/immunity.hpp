#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cloudnet/graph.hpp"
#include "cloudnet/graph_io.hpp"
#include "cloudnet/rng.hpp"
#include "cloudnet/topology.hpp"

namespace cloudnet {

// "paper" keeps the published formula 1 - (S/T)*C, under which members of
// larger sub-networks are LESS likely to survive an exposure. "prose"
// flips it to 1 - (1 - S/T)*C so that larger sub-networks are better
// protected, matching the surrounding text. Both are kept selectable
// because the two readings disagree.
enum class ImmunityConvention : std::uint8_t { Paper, Prose };

enum class ProtectStrategy : std::uint8_t { Degree, Random };

const char* to_token(ImmunityConvention convention);
ImmunityConvention immunity_convention_from_token(const std::string& token);
const char* to_token(ProtectStrategy strategy);
ProtectStrategy protect_strategy_from_token(const std::string& token);

// Survival probability of one exposure for a node whose sub-network has
// subnet_size members out of total_virtual VMs in the whole virtual layer.
double immunity_probability(std::uint32_t subnet_size, std::uint32_t total_virtual, double c,
                            ImmunityConvention convention = ImmunityConvention::Paper);

// Hosts have no sub-network of their own; they inherit the mean size of
// their resident VMs' sub-networks (rounded to the nearest integer >= 1).
// A host with no resident VMs is fully immune.
double host_immunity(std::span<const std::uint32_t> resident_subnet_sizes,
                     std::uint32_t total_virtual, double c,
                     ImmunityConvention convention = ImmunityConvention::Paper);
double host_immunity(const LayeredTopology& topology, std::uint32_t host_index, double c,
                     ImmunityConvention convention = ImmunityConvention::Paper);

// Per-node survival probabilities for every node of the simplified graph.
std::vector<double> immunity_per_node(const LabeledGraph& network, double c,
                                      ImmunityConvention convention = ImmunityConvention::Paper);

// round(fraction * n) nodes; Degree picks the highest-degree nodes with
// ties broken toward lower ids, Random samples uniformly without
// replacement. Result is sorted ascending.
std::vector<NodeId> select_immune_set(const Graph& graph, double fraction,
                                      ProtectStrategy strategy, Rng& rng);

// Stream tag for protected-set sampling. Deriving the selection generator
// from (seed, this tag) at every grid cell keeps random sets nested across
// budgets: a larger fraction extends a smaller one.
constexpr std::uint64_t kProtectSelectionStream = 0x5e1ec7;

// Occupation probability of the half-edge i <- j without protection:
// both endpoints survive the initial removal and j survives infection.
double edge_probability(double eta, double p_imu_j);

// With protection: j transmits only if it is neither immune nor in the
// protected set. Evaluated as (1-eta)^2 * (p + p_b*(1-p)), which equals
// the nested product form and preserves >= edge_probability exactly in
// floating point.
double edge_probability_protected(double eta, double p_imu_j, double p_j_in_b);

// Per-half-edge occupation probabilities; entry e depends on tail(e).
std::vector<double> edge_probabilities(const Graph& graph, std::span<const double> p_imu,
                                       double eta);
std::vector<double> edge_probabilities_protected(const Graph& graph,
                                                 std::span<const double> p_imu, double eta,
                                                 std::span<const double> p_in_b);

// Membership probabilities P(j in B) used by the solver: the 0/1 indicator
// of the selected set for the Degree strategy, the constant fraction for
// Random selection.
std::vector<double> membership_probabilities(std::size_t node_count,
                                             std::span<const NodeId> protected_set,
                                             ProtectStrategy strategy, double fraction);

struct ImmunityProfile {
    std::vector<double> p_imu;                // per node
    std::vector<NodeId> protected_set;        // sorted ascending
    std::vector<std::uint8_t> is_protected;   // per node
    double coefficient_c = 0.9;
    double initial_removed_fraction = 0.0;    // eta
};

ImmunityProfile build_profile(const LabeledGraph& network, double c,
                              ImmunityConvention convention, double protect_fraction,
                              ProtectStrategy strategy, Rng& rng, double eta);

}  // namespace cloudnet
