#pragma once

#include <cstdint>
#include <vector>

#include "coarsegraph/graph.hpp"

namespace cg {

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph grid_graph(int rows, int cols);
Graph complete_graph(int n);
Graph star_graph(int leaves);

/// Random tree via a random attachment process (deterministic in the seed).
Graph random_tree(int n, std::uint64_t seed);

/// Erdos-Renyi G(n, p) with p = p_num / p_den, restricted to nothing; may be
/// disconnected.
Graph gnp_graph(int n, double p, std::uint64_t seed);

/// Theta graph: two hub vertices joined by three internally disjoint paths
/// of the given arm lengths (each >= 1).
Graph theta_graph(int arm1, int arm2, int arm3);

/// Every edge subdivided `t` times (t extra vertices per edge).
Graph subdivide_all_edges(const Graph& g, int t);

/// Trap for the diamond pipeline: a subdivided K4 minus an edge whose arms
/// are long enough that a fat model survives ball cuts.
Graph k4minus_trap(int arm);
/// Trap for the K4 pipeline: a subdivided K4.
Graph k4_trap(int arm);

/// A long cycle with pendant combs, used to exercise deep recursion.
Graph comb_cycle(int cycle_len, int tooth_every, int tooth_len);

} // namespace cg
