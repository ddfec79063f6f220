#include "coarsegraph/graph.hpp"

#include <algorithm>

#include "coarsegraph/check.hpp"

namespace cg {

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::vector<VertexId> vs) : vs_(std::move(vs)) {
    std::sort(vs_.begin(), vs_.end());
    vs_.erase(std::unique(vs_.begin(), vs_.end()), vs_.end());
}

VertexSet::VertexSet(std::initializer_list<VertexId> vs)
    : VertexSet(std::vector<VertexId>(vs)) {}

VertexSet VertexSet::single(VertexId v) { return VertexSet({v}); }

VertexSet VertexSet::from_sorted(std::vector<VertexId> vs) {
    VertexSet s;
    s.vs_ = std::move(vs);
    return s;
}

bool VertexSet::contains(VertexId v) const {
    return std::binary_search(vs_.begin(), vs_.end(), v);
}

VertexId VertexSet::min_vertex() const {
    require(!vs_.empty(), "min_vertex of empty set");
    return vs_.front();
}

void VertexSet::insert(VertexId v) {
    auto it = std::lower_bound(vs_.begin(), vs_.end(), v);
    if (it == vs_.end() || *it != v) vs_.insert(it, v);
}

VertexSet VertexSet::union_with(const VertexSet& other) const {
    std::vector<VertexId> out;
    out.reserve(vs_.size() + other.vs_.size());
    std::set_union(vs_.begin(), vs_.end(), other.vs_.begin(), other.vs_.end(),
                   std::back_inserter(out));
    return from_sorted(std::move(out));
}

VertexSet VertexSet::intersect_with(const VertexSet& other) const {
    std::vector<VertexId> out;
    std::set_intersection(vs_.begin(), vs_.end(), other.vs_.begin(), other.vs_.end(),
                          std::back_inserter(out));
    return from_sorted(std::move(out));
}

VertexSet VertexSet::minus(const VertexSet& other) const {
    std::vector<VertexId> out;
    std::set_difference(vs_.begin(), vs_.end(), other.vs_.begin(), other.vs_.end(),
                        std::back_inserter(out));
    return from_sorted(std::move(out));
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    return std::includes(other.vs_.begin(), other.vs_.end(), vs_.begin(), vs_.end());
}

bool VertexSet::intersects(const VertexSet& other) const {
    auto a = vs_.begin();
    auto b = other.vs_.begin();
    while (a != vs_.end() && b != other.vs_.end()) {
        if (*a == *b) return true;
        if (*a < *b) ++a;
        else ++b;
    }
    return false;
}

std::vector<char> VertexSet::mask(int bound) const {
    std::vector<char> m(static_cast<std::size_t>(bound), 0);
    for (VertexId v : vs_) {
        require_structural(v >= 0 && v < bound, "vertex id out of range for mask");
        m[static_cast<std::size_t>(v)] = 1;
    }
    return m;
}

// --------------------------------------------------------------------- Path

Path Path::subpath(std::size_t i, std::size_t j) const {
    require(i <= j && j < seq_.size(), "invalid subpath bounds");
    return Path(std::vector<VertexId>(seq_.begin() + static_cast<std::ptrdiff_t>(i),
                                      seq_.begin() + static_cast<std::ptrdiff_t>(j) + 1));
}

Path Path::reversed() const {
    std::vector<VertexId> r(seq_.rbegin(), seq_.rend());
    return Path(std::move(r));
}

Path Path::interior() const {
    if (seq_.size() <= 2) return Path();
    return subpath(1, seq_.size() - 2);
}

VertexSet Path::vertex_set() const { return VertexSet(seq_); }

bool Path::contains(VertexId v) const {
    return std::find(seq_.begin(), seq_.end(), v) != seq_.end();
}

std::size_t Path::position_of(VertexId v) const {
    auto it = std::find(seq_.begin(), seq_.end(), v);
    require(it != seq_.end(), "vertex not on path");
    return static_cast<std::size_t>(it - seq_.begin());
}

Path Path::concatenated(const Path& tail) const {
    if (seq_.empty()) return tail;
    if (tail.empty()) return *this;
    require(last() == tail.first(), "concatenated paths must share the junction vertex");
    std::vector<VertexId> out = seq_;
    out.insert(out.end(), tail.seq_.begin() + 1, tail.seq_.end());
    return Path(std::move(out));
}

void Path::check_valid(const Graph& host) const {
    require_structural(!seq_.empty(), "empty path");
    std::vector<VertexId> seen = seq_;
    std::sort(seen.begin(), seen.end());
    require_structural(std::adjacent_find(seen.begin(), seen.end()) == seen.end(),
                       "path repeats a vertex");
    for (VertexId v : seq_)
        require_structural(host.contains(v), "path vertex not in host graph");
    for (std::size_t i = 0; i + 1 < seq_.size(); ++i)
        require_structural(host.adjacent(seq_[i], seq_[i + 1]),
                           "consecutive path vertices not adjacent");
}

// -------------------------------------------------------------------- Graph

namespace {

void finish_adjacency(std::vector<std::vector<VertexId>>& adj) {
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
    }
}

} // namespace

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
    require(n >= 0, "negative vertex count");
    std::vector<VertexId> vs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vs[static_cast<std::size_t>(i)] = i;
    return on_vertices(VertexSet::from_sorted(std::move(vs)), n, edges);
}

Graph Graph::on_vertices(const VertexSet& vs, int id_bound, const std::vector<Edge>& edges) {
    Graph g;
    g.adj_.assign(static_cast<std::size_t>(id_bound), {});
    g.present_.assign(static_cast<std::size_t>(id_bound), 0);
    for (VertexId v : vs) {
        require_structural(v >= 0 && v < id_bound, "vertex id out of range");
        g.present_[static_cast<std::size_t>(v)] = 1;
    }
    g.vertices_.assign(vs.begin(), vs.end());
    for (const Edge& e : edges) {
        require_structural(g.contains(e.first) && g.contains(e.second),
                           "edge endpoint is not a listed vertex");
        require_structural(e.first != e.second, "loops are not allowed");
        g.adj_[static_cast<std::size_t>(e.first)].push_back(e.second);
        g.adj_[static_cast<std::size_t>(e.second)].push_back(e.first);
    }
    finish_adjacency(g.adj_);
    for (const auto& nbrs : g.adj_) {
        require_structural(std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end(),
                           "parallel edges are not allowed");
    }
    g.edge_count_ = edges.size();
    return g;
}

const std::vector<VertexId>& Graph::neighbors(VertexId v) const {
    require(contains(v), "neighbors of absent vertex");
    return adj_[static_cast<std::size_t>(v)];
}

int Graph::degree(VertexId v) const {
    return static_cast<int>(neighbors(v).size());
}

bool Graph::adjacent(VertexId u, VertexId v) const {
    if (!contains(u) || !contains(v)) return false;
    const auto& nu = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId u : vertices_) {
        for (VertexId v : adj_[static_cast<std::size_t>(u)]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

Graph Graph::induced(const VertexSet& keep) const {
    for (VertexId v : keep)
        require(contains(v), "induced set contains absent vertex");
    std::vector<char> m = keep.mask(id_bound());
    std::vector<Edge> es;
    for (VertexId u : keep) {
        for (VertexId v : adj_[static_cast<std::size_t>(u)]) {
            if (u < v && m[static_cast<std::size_t>(v)]) es.emplace_back(u, v);
        }
    }
    return on_vertices(keep, id_bound(), es);
}

Graph Graph::without(const VertexSet& removed) const {
    return induced(vertex_set().minus(removed));
}

bool Graph::is_connected() const {
    if (vertices_.size() <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(id_bound()), 0);
    std::vector<VertexId> stack{vertices_.front()};
    seen[static_cast<std::size_t>(vertices_.front())] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        for (VertexId v : adj_[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == vertices_.size();
}

bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges() == b.edges();
}

Graph subgraph_union(const Graph& host, const std::vector<VertexSet>& induced_parts,
                     const std::vector<Path>& paths) {
    VertexSet all;
    for (const auto& part : induced_parts) all = all.union_with(part);
    for (const auto& p : paths) all = all.union_with(p.vertex_set());
    for (VertexId v : all)
        require(host.contains(v), "subgraph_union vertex not in host");

    std::vector<Edge> es;
    for (const auto& part : induced_parts) {
        std::vector<char> m = part.mask(host.id_bound());
        for (VertexId u : part) {
            for (VertexId v : host.neighbors(u)) {
                if (u < v && m[static_cast<std::size_t>(v)]) es.emplace_back(u, v);
            }
        }
    }
    for (const auto& p : paths) {
        p.check_valid(host);
        for (std::size_t i = 0; i + 1 < p.vertex_count(); ++i) {
            VertexId u = p.at(i), v = p.at(i + 1);
            es.emplace_back(std::min(u, v), std::max(u, v));
        }
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    return Graph::on_vertices(all, host.id_bound(), es);
}

// ------------------------------------------------------------- GraphBuilder

GraphBuilder::GraphBuilder(const Graph& g) {
    next_id_ = g.id_bound();
    for (VertexId v : g.vertices())
        present_or_grow(v);
    edges_ = g.edges();
    explicit_vertices_ = g.vertices();
}

VertexId GraphBuilder::add_vertex() {
    VertexId v = next_id_++;
    explicit_vertices_.push_back(v);
    return v;
}

void GraphBuilder::ensure_vertex(VertexId v) {
    require(v >= 0, "negative vertex id");
    present_or_grow(v);
}

void GraphBuilder::present_or_grow(VertexId v) {
    if (v >= next_id_) next_id_ = v + 1;
    explicit_vertices_.push_back(v);
}

void GraphBuilder::add_edge(VertexId u, VertexId v) {
    require(u != v, "loop edge in builder");
    ensure_vertex(u);
    ensure_vertex(v);
    Edge e{std::min(u, v), std::max(u, v)};
    if (!has_edge(u, v)) edges_.push_back(e);
}

bool GraphBuilder::has_edge(VertexId u, VertexId v) const {
    Edge e{std::min(u, v), std::max(u, v)};
    return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

Graph GraphBuilder::build() const {
    return Graph::on_vertices(VertexSet(explicit_vertices_), next_id_, edges_);
}

} // namespace cg
