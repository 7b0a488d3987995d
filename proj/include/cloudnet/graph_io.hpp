#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cloudnet/graph.hpp"

namespace cloudnet {

// Graph plus the per-node metadata columns of the text format: the
// sub-network a VM belongs to and the node id of the host it runs on.
// Host nodes carry -1 in both columns.
struct LabeledGraph {
    Graph graph;
    std::vector<std::int32_t> subnet_of;
    std::vector<std::int32_t> host_of;
};

// Line-oriented text format shared by every CLI subcommand:
//   nodes <n> edges <m>
//   node <id> <vm|host> <subnet_id|-> <host_id|->   (n lines, ids in order)
//   edge <u> <v>                                    (m lines, u < v, sorted)
// Parsing is strict: unknown tokens, malformed fields, out-of-order ids,
// duplicate edges or count mismatches all throw with the line number.
LabeledGraph read_network(std::istream& in);
LabeledGraph read_network_file(const std::string& path);

void write_network(std::ostream& out, const LabeledGraph& network);
void write_network_file(const std::string& path, const LabeledGraph& network);

}  // namespace cloudnet
