#pragma once

#include <optional>
#include <vector>

#include "coarsegraph/extint.hpp"
#include "coarsegraph/graph.hpp"

namespace cg {

/// Minimum distance between two nonempty vertex sets; infinity when no
/// connecting path exists.
ExtInt dist(const Graph& g, const VertexSet& a, const VertexSet& b);
ExtInt dist_vv(const Graph& g, VertexId a, VertexId b);
ExtInt dist_v(const Graph& g, VertexId a, const VertexSet& b);

/// Distances from the multi-source `from` to all vertices; -1 for
/// unreachable, indexed by vertex id.
std::vector<int> distances_from(const Graph& g, const VertexSet& from);

/// Closed ball of radius r around a set.
VertexSet ball(const Graph& g, const VertexSet& center, long long r);
VertexSet ball_v(const Graph& g, VertexId center, long long r);

/// Least k such that U fits in some ball B(v, k), v ranging over all of G;
/// 0 for the empty set, infinity when no finite k works.
ExtInt rad_of_set(const Graph& g, const VertexSet& u);

/// A vertex realizing rad_of_set, ties broken by minimum id. Requires the
/// radius to be finite (nonempty u).
VertexId center_of(const Graph& g, const VertexSet& u);

struct Component {
    VertexSet vertices;
    /// Boundary: vertices of the component with a neighbor in the removed set.
    VertexSet boundary;
    /// Neighborhood: removed vertices adjacent to the component.
    VertexSet neighborhood;

    bool attaches_to(const VertexSet& u) const { return neighborhood.intersects(u); }
};

/// Connected components of g - removed, ordered by minimum vertex id.
std::vector<Component> components(const Graph& g, const VertexSet& removed);

/// Shortest X-Y path: first vertex in X, last in Y, interior avoiding both
/// (a single vertex when X and Y intersect). When `allowed_interior` is
/// given, interior vertices are further restricted to that set. Ties broken
/// deterministically by BFS in id order.
std::optional<Path> shortest_path(const Graph& g, const VertexSet& from, const VertexSet& to,
                                  const VertexSet* allowed_interior = nullptr);

/// Exact farthest pair within `u` (max pairwise distance in g), min-id
/// tie-breaks; runs one BFS per element of u. Requires nonempty u.
struct FarPair {
    VertexId a;
    VertexId b;
    ExtInt distance;
};
FarPair farthest_pair(const Graph& g, const VertexSet& u);

/// Double-sweep heuristic lower bound for the farthest pair. Cheap; the
/// reported distance is exact for the returned pair but may undershoot the
/// true maximum.
FarPair farthest_pair_sweep(const Graph& g, const VertexSet& u);

} // namespace cg
