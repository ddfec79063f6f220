#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "coarsegraph/errors.hpp"

namespace cg {

using VertexId = int;
using Edge = std::pair<VertexId, VertexId>;

/// Sorted, duplicate-free set of vertex ids with value-semantics set algebra.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<VertexId> vs);
    VertexSet(std::initializer_list<VertexId> vs);

    static VertexSet single(VertexId v);
    /// Adopts `vs` without sorting; caller guarantees sorted + unique.
    static VertexSet from_sorted(std::vector<VertexId> vs);

    bool empty() const { return vs_.empty(); }
    std::size_t size() const { return vs_.size(); }
    bool contains(VertexId v) const;
    VertexId min_vertex() const; // requires nonempty

    const std::vector<VertexId>& ids() const { return vs_; }
    std::vector<VertexId>::const_iterator begin() const { return vs_.begin(); }
    std::vector<VertexId>::const_iterator end() const { return vs_.end(); }

    void insert(VertexId v);

    VertexSet union_with(const VertexSet& other) const;
    VertexSet intersect_with(const VertexSet& other) const;
    VertexSet minus(const VertexSet& other) const;
    bool is_subset_of(const VertexSet& other) const;
    bool intersects(const VertexSet& other) const;

    /// Byte mask of length `bound`; ids >= bound must not occur.
    std::vector<char> mask(int bound) const;

    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.vs_ == b.vs_; }
    friend bool operator!=(const VertexSet& a, const VertexSet& b) { return a.vs_ != b.vs_; }

private:
    std::vector<VertexId> vs_;
};

class Graph;

/// A path as an ordered vertex sequence. Consecutive vertices must be
/// adjacent in the host graph and no vertex repeats; a single vertex is a
/// valid (trivial) path.
class Path {
public:
    Path() = default;
    explicit Path(std::vector<VertexId> seq) : seq_(std::move(seq)) {}
    static Path single(VertexId v) { return Path({v}); }

    bool empty() const { return seq_.empty(); }
    /// Number of edges.
    std::size_t length() const { return seq_.empty() ? 0 : seq_.size() - 1; }
    std::size_t vertex_count() const { return seq_.size(); }
    VertexId first() const { return seq_.front(); }
    VertexId last() const { return seq_.back(); }
    VertexId at(std::size_t i) const { return seq_.at(i); }
    const std::vector<VertexId>& seq() const { return seq_; }

    /// Subpath from position i to position j (inclusive); i <= j required.
    Path subpath(std::size_t i, std::size_t j) const;
    Path reversed() const;
    /// Interior: the path without its two endpoints (empty for length <= 1).
    Path interior() const;
    VertexSet vertex_set() const;
    bool contains(VertexId v) const;
    /// Position of v on the path; throws if absent.
    std::size_t position_of(VertexId v) const;

    /// Appends `tail` whose first vertex equals this path's last vertex.
    Path concatenated(const Path& tail) const;

    void check_valid(const Graph& host) const; // throws StructuralError

    friend bool operator==(const Path& a, const Path& b) { return a.seq_ == b.seq_; }

private:
    std::vector<VertexId> seq_;
};

/// Immutable finite undirected simple graph, safe to share across concurrent
/// readers. Vertex ids live in [0, id_bound) but not every id needs to be
/// present, so induced subgraphs keep the host's stable ids. Adjacency lists
/// are sorted; all iteration is deterministic.
class Graph {
public:
    Graph() = default;

    /// Graph on vertices 0..n-1.
    static Graph from_edges(int n, const std::vector<Edge>& edges);
    /// Graph on an explicit vertex set inside [0, id_bound).
    static Graph on_vertices(const VertexSet& vs, int id_bound, const std::vector<Edge>& edges);

    int id_bound() const { return static_cast<int>(adj_.size()); }
    bool contains(VertexId v) const {
        return v >= 0 && v < id_bound() && present_[static_cast<std::size_t>(v)];
    }
    const std::vector<VertexId>& vertices() const { return vertices_; }
    VertexSet vertex_set() const { return VertexSet::from_sorted(vertices_); }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<VertexId>& neighbors(VertexId v) const;
    int degree(VertexId v) const;
    bool adjacent(VertexId u, VertexId v) const;
    std::vector<Edge> edges() const; // each edge once, u < v, sorted

    /// Induced subgraph on `keep` (which must be a subset of the vertices);
    /// ids are preserved.
    Graph induced(const VertexSet& keep) const;
    Graph without(const VertexSet& removed) const;

    bool is_connected() const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    friend class GraphBuilder;
    std::vector<std::vector<VertexId>> adj_;
    std::vector<char> present_;
    std::vector<VertexId> vertices_;
    std::size_t edge_count_ = 0;
};

/// Union of subgraphs of a common host: the induced subgraphs on each set in
/// `induced_parts` plus the edges of each path in `paths`. Vertices are the
/// union of all parts.
Graph subgraph_union(const Graph& host, const std::vector<VertexSet>& induced_parts,
                     const std::vector<Path>& paths = {});

/// Incremental builder for small graphs (decomposition graphs, patterns).
class GraphBuilder {
public:
    GraphBuilder() = default;
    explicit GraphBuilder(const Graph& g); // start from an existing graph

    VertexId add_vertex();
    void ensure_vertex(VertexId v);
    void add_edge(VertexId u, VertexId v); // error on loop; duplicate is a no-op
    bool has_edge(VertexId u, VertexId v) const;
    int vertex_count() const { return next_id_; }

    Graph build() const;

private:
    void present_or_grow(VertexId v);

    int next_id_ = 0;
    std::vector<Edge> edges_;
    std::vector<VertexId> explicit_vertices_;
};

} // namespace cg
