#include "cloudnet/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace cloudnet {

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("graph file, line " + std::to_string(line_no) + ": " + what);
}

// Splits on single spaces; empty tokens (doubled spaces) are malformed.
std::vector<std::string> tokenize(const std::string& line, std::size_t line_no) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t next = line.find(' ', pos);
        const std::size_t end = next == std::string::npos ? line.size() : next;
        if (end == pos) fail(line_no, "malformed spacing");
        tokens.emplace_back(line.substr(pos, end - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return tokens;
}

std::uint64_t parse_count(const std::string& token, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        fail(line_no, "expected a non-negative integer, got '" + token + "'");
    }
    return value;
}

std::string next_line(std::istream& in, std::size_t& line_no) {
    std::string line;
    if (!std::getline(in, line)) fail(line_no + 1, "unexpected end of file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') fail(line_no, "CR line ending");
    return line;
}

}  // namespace

LabeledGraph read_network(std::istream& in) {
    std::size_t line_no = 0;

    const auto header = tokenize(next_line(in, line_no), line_no);
    if (header.size() != 4 || header[0] != "nodes" || header[2] != "edges") {
        fail(line_no, "expected 'nodes <n> edges <m>'");
    }
    const std::uint64_t n = parse_count(header[1], line_no);
    const std::uint64_t m = parse_count(header[3], line_no);

    std::vector<NodeKind> kinds(n);
    std::vector<std::int32_t> subnet_of(n, -1);
    std::vector<std::int32_t> host_of(n, -1);

    for (std::uint64_t i = 0; i < n; ++i) {
        const auto t = tokenize(next_line(in, line_no), line_no);
        if (t.size() != 5 || t[0] != "node") fail(line_no, "expected 'node <id> <kind> <subnet> <host>'");
        if (parse_count(t[1], line_no) != i) fail(line_no, "node ids must appear in order 0..n-1");
        NodeKind kind;
        try {
            kind = node_kind_from_token(t[2]);
        } catch (const std::exception& e) {
            fail(line_no, e.what());
        }
        kinds[i] = kind;
        if (kind == NodeKind::Host) {
            if (t[3] != "-" || t[4] != "-") fail(line_no, "host nodes must carry '-' metadata");
        } else {
            if (t[3] == "-" || t[4] == "-") fail(line_no, "vm nodes must carry subnet and host ids");
            const std::uint64_t subnet = parse_count(t[3], line_no);
            const std::uint64_t host = parse_count(t[4], line_no);
            if (subnet > static_cast<std::uint64_t>(INT32_MAX)) fail(line_no, "subnet id out of range");
            if (host >= n) fail(line_no, "host id out of range");
            subnet_of[i] = static_cast<std::int32_t>(subnet);
            host_of[i] = static_cast<std::int32_t>(host);
        }
    }

    std::vector<UndirectedEdge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        const auto t = tokenize(next_line(in, line_no), line_no);
        if (t.size() != 3 || t[0] != "edge") fail(line_no, "expected 'edge <u> <v>'");
        const std::uint64_t u = parse_count(t[1], line_no);
        const std::uint64_t v = parse_count(t[2], line_no);
        if (u >= n || v >= n) fail(line_no, "edge endpoint out of range");
        if (u >= v) fail(line_no, "edges must satisfy u < v");
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    {
        auto sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::runtime_error("graph file: duplicate edge line");
        }
    }

    std::string trailing;
    while (std::getline(in, trailing)) {
        ++line_no;
        if (!trailing.empty()) fail(line_no, "trailing content after edge list");
    }

    LabeledGraph network;
    try {
        network.graph = Graph(std::move(kinds), std::move(edges));
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("graph file: ") + e.what());
    }
    // metadata cross-checks need the final kinds
    for (std::uint64_t i = 0; i < n; ++i) {
        if (host_of[i] >= 0 && network.graph.kind(static_cast<NodeId>(host_of[i])) != NodeKind::Host) {
            throw std::runtime_error("graph file: node " + std::to_string(i) +
                                     " names a non-host node as its host");
        }
    }
    network.subnet_of = std::move(subnet_of);
    network.host_of = std::move(host_of);
    return network;
}

LabeledGraph read_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_network(in);
}

void write_network(std::ostream& out, const LabeledGraph& network) {
    const Graph& g = network.graph;
    out << "nodes " << g.node_count() << " edges " << g.edge_count() << "\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << "node " << v << ' ' << to_token(g.kind(v));
        if (g.kind(v) == NodeKind::Host) {
            out << " - -\n";
        } else {
            out << ' ' << network.subnet_of[v] << ' ' << network.host_of[v] << "\n";
        }
    }
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (const NodeId v : g.neighbors(u)) {
            if (u < v) out << "edge " << u << ' ' << v << "\n";
        }
    }
}

void write_network_file(const std::string& path, const LabeledGraph& network) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_network(out, network);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace cloudnet
