#include "coarsegraph/io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "coarsegraph/check.hpp"

namespace cg {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace

Graph load_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::vector<VertexId> singles;
    VertexId max_id = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(strip_comment(line));
        long long u, v;
        if (!(ls >> u)) continue; // blank or comment-only line
        if (u < 0) throw ParseError("negative vertex id", lineno);
        if (ls >> v) {
            if (v < 0) throw ParseError("negative vertex id", lineno);
            long long trailing;
            if (ls >> trailing) throw ParseError("more than two ids on a line", lineno);
            if (u == v) throw ParseError("loop edge", lineno);
            Edge e{static_cast<VertexId>(std::min(u, v)), static_cast<VertexId>(std::max(u, v))};
            if (std::find(edges.begin(), edges.end(), e) != edges.end())
                throw ParseError("duplicate edge", lineno);
            edges.push_back(e);
            max_id = std::max(max_id, e.second);
        } else {
            if (!ls.eof()) throw ParseError("malformed vertex id", lineno);
            singles.push_back(static_cast<VertexId>(u));
            max_id = std::max(max_id, static_cast<VertexId>(u));
        }
    }
    (void)singles; // vertex set is 0..max_id regardless
    return Graph::from_edges(max_id + 1, edges);
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    std::vector<char> has_edge(static_cast<std::size_t>(g.id_bound()), 0);
    for (const Edge& e : g.edges()) {
        out << e.first << ' ' << e.second << '\n';
        has_edge[static_cast<std::size_t>(e.first)] = 1;
        has_edge[static_cast<std::size_t>(e.second)] = 1;
    }
    for (VertexId v : g.vertices()) {
        if (!has_edge[static_cast<std::size_t>(v)]) out << v << '\n';
    }
}

void save_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write graph file: " + path);
    save_edge_list(g, out);
}

std::string graph_digest(const Graph& g) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(g.vertex_count());
    for (const Edge& e : g.edges()) {
        mix(static_cast<std::uint64_t>(e.first));
        mix(static_cast<std::uint64_t>(e.second));
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

} // namespace cg
