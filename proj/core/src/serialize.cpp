#include "coarsegraph/serialize.hpp"

#include <algorithm>
#include <sstream>

#include "coarsegraph/check.hpp"

namespace cg {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<VertexId> read_ids(std::istringstream& ls, int lineno) {
    std::vector<VertexId> ids;
    long long v;
    while (ls >> v) {
        if (v < 0) throw ParseError("negative id", lineno);
        ids.push_back(static_cast<VertexId>(v));
    }
    if (!ls.eof()) throw ParseError("malformed id list", lineno);
    return ids;
}

Rational parse_rational(const std::string& tok, int lineno) {
    auto slash = tok.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(tok));
        long long num = std::stoll(tok.substr(0, slash));
        long long den = std::stoll(tok.substr(slash + 1));
        if (den <= 0) throw ParseError("nonpositive denominator", lineno);
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational", lineno);
    } catch (const std::out_of_range&) {
        throw ParseError("rational out of range", lineno);
    }
}

std::string print_rational(const Rational& r) {
    std::ostringstream out;
    out << r.numerator();
    if (r.denominator() != 1) out << '/' << r.denominator();
    return out.str();
}

} // namespace

void save_model(const MinorModel& m, std::ostream& out) {
    for (const Edge& e : m.pattern.edges()) out << "pattern " << e.first << ' ' << e.second << '\n';
    for (const auto& [x, set] : m.branch_sets) {
        out << "branch " << x << ':';
        for (VertexId v : set) out << ' ' << v;
        out << '\n';
    }
    for (const auto& [e, path] : m.branch_paths) {
        out << "path " << e.first << ' ' << e.second << ':';
        for (VertexId v : path.seq()) out << ' ' << v;
        out << '\n';
    }
}

MinorModel load_model(std::istream& in) {
    std::vector<Edge> pattern_edges;
    std::map<VertexId, VertexSet> branch_sets;
    std::map<Edge, Path> branch_paths;
    VertexId max_pattern = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = strip_comment(line);
        std::istringstream ls(body);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "pattern") {
            long long u, v;
            if (!(ls >> u >> v) || u < 0 || v < 0 || u == v)
                throw ParseError("malformed pattern edge", lineno);
            pattern_edges.emplace_back(static_cast<VertexId>(std::min(u, v)),
                                       static_cast<VertexId>(std::max(u, v)));
            max_pattern = std::max(max_pattern, static_cast<VertexId>(std::max(u, v)));
        } else if (kind == "branch") {
            std::string head;
            if (!(ls >> head) || head.empty() || head.back() != ':')
                throw ParseError("malformed branch line", lineno);
            VertexId x;
            try {
                x = std::stoi(head.substr(0, head.size() - 1));
            } catch (...) {
                throw ParseError("malformed branch vertex", lineno);
            }
            if (branch_sets.count(x)) throw ParseError("duplicate branch set", lineno);
            branch_sets[x] = VertexSet(read_ids(ls, lineno));
            max_pattern = std::max(max_pattern, x);
        } else if (kind == "path") {
            long long u;
            std::string head;
            if (!(ls >> u >> head) || head.empty() || head.back() != ':' || u < 0)
                throw ParseError("malformed path line", lineno);
            VertexId v;
            try {
                v = std::stoi(head.substr(0, head.size() - 1));
            } catch (...) {
                throw ParseError("malformed path endpoint", lineno);
            }
            Edge e{static_cast<VertexId>(std::min<long long>(u, v)),
                   static_cast<VertexId>(std::max<long long>(u, v))};
            if (branch_paths.count(e)) throw ParseError("duplicate branch path", lineno);
            std::vector<VertexId> ids = read_ids(ls, lineno);
            if (ids.empty()) throw ParseError("empty branch path", lineno);
            branch_paths[e] = Path(std::move(ids));
        } else {
            throw ParseError("unknown record '" + kind + "'", lineno);
        }
    }
    if (branch_sets.empty()) throw ParseError("certificate contains no branch sets", 0);
    MinorModel m;
    m.pattern = Graph::from_edges(max_pattern + 1, pattern_edges);
    m.branch_sets = std::move(branch_sets);
    m.branch_paths = std::move(branch_paths);
    return m;
}

void save_decomposition(const GraphDecomposition& d, std::ostream& out) {
    for (const Edge& e : d.h.edges()) out << "edge " << e.first << ' ' << e.second << '\n';
    for (const auto& [node, bag] : d.bags) {
        out << "bag " << node << ':';
        for (VertexId v : bag) out << ' ' << v;
        out << '\n';
    }
}

GraphDecomposition load_decomposition(std::istream& in) {
    std::vector<Edge> edges;
    std::map<VertexId, VertexSet> bags;
    VertexId max_node = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = strip_comment(line);
        std::istringstream ls(body);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "edge") {
            long long u, v;
            if (!(ls >> u >> v) || u < 0 || v < 0 || u == v)
                throw ParseError("malformed decomposition edge", lineno);
            edges.emplace_back(static_cast<VertexId>(std::min(u, v)),
                               static_cast<VertexId>(std::max(u, v)));
            max_node = std::max(max_node, static_cast<VertexId>(std::max(u, v)));
        } else if (kind == "bag") {
            std::string head;
            if (!(ls >> head) || head.empty() || head.back() != ':')
                throw ParseError("malformed bag line", lineno);
            VertexId node;
            try {
                node = std::stoi(head.substr(0, head.size() - 1));
            } catch (...) {
                throw ParseError("malformed bag node", lineno);
            }
            if (bags.count(node)) throw ParseError("duplicate bag", lineno);
            bags[node] = VertexSet(read_ids(ls, lineno));
            max_node = std::max(max_node, node);
        } else {
            throw ParseError("unknown record '" + kind + "'", lineno);
        }
    }
    GraphDecomposition d;
    std::vector<VertexId> nodes;
    for (const auto& [node, bag] : bags) nodes.push_back(node);
    for (const Edge& e : edges) {
        nodes.push_back(e.first);
        nodes.push_back(e.second);
    }
    d.h = Graph::on_vertices(VertexSet(nodes), max_node + 1, edges);
    d.bags = std::move(bags);
    for (VertexId node : d.h.vertices())
        if (!d.bags.count(node)) d.bags[node] = VertexSet();
    return d;
}

void save_qi(const QuasiIsometry& q, std::ostream& out) {
    out << "constants " << print_rational(q.m) << ' ' << print_rational(q.a) << '\n';
    for (const auto& [node, v] : q.map) out << node << " -> " << v << '\n';
}

QuasiIsometry load_qi(std::istream& in) {
    QuasiIsometry q;
    bool have_constants = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = strip_comment(line);
        std::istringstream ls(body);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "constants") {
            std::string ms, as;
            if (!(ls >> ms >> as)) throw ParseError("malformed constants header", lineno);
            q.m = parse_rational(ms, lineno);
            q.a = parse_rational(as, lineno);
            have_constants = true;
        } else {
            std::string arrow;
            long long v;
            if (!(ls >> arrow >> v) || arrow != "->" || v < 0)
                throw ParseError("malformed mapping line", lineno);
            VertexId node;
            try {
                node = std::stoi(first);
            } catch (...) {
                throw ParseError("malformed node id", lineno);
            }
            if (q.map.count(node)) throw ParseError("duplicate mapping", lineno);
            q.map[node] = static_cast<VertexId>(v);
        }
    }
    if (!have_constants) throw ParseError("missing constants header", 0);
    return q;
}

std::string to_string(const MinorModel& m) {
    std::ostringstream out;
    save_model(m, out);
    return out.str();
}

std::string to_string(const GraphDecomposition& d) {
    std::ostringstream out;
    save_decomposition(d, out);
    return out.str();
}

std::string to_string(const QuasiIsometry& q) {
    std::ostringstream out;
    save_qi(q, out);
    return out.str();
}

} // namespace cg
