#pragma once

#include <array>
#include <variant>

#include "coarsegraph/decomposition.hpp"
#include "coarsegraph/graph.hpp"
#include "coarsegraph/metric.hpp"
#include "coarsegraph/minor.hpp"

namespace cg {

/// Witness constructor: three boundary vertices of a component cut off by a
/// ball, pairwise at least 7K apart, assemble into a verified K-fat model of
/// the diamond (K4 minus an edge). The component's vertex set and the shrunk
/// ball become two branch sets; the middle thirds of two geodesics from the
/// triple toward the ball become the other two.
MinorModel fat_k4minus_from_triple(const Graph& g, VertexId w, long long r, const Component& c,
                                   const std::array<VertexId, 3>& triple, int K);

/// Path-ball decomposition of the union of radius-r balls around a shortest
/// path: bag at position h is the union of the balls around positions within
/// r+1 of h. Outer width and inner spread are both at most 2r+1 and every
/// bag sits inside the (2r+1)-ball of its position.
PartialDecomposition path_ball_decomposition(const Graph& g, const Path& p, long long r);

/// Decomposition modelled on a path produced for a component with two far
/// boundary vertices, plus its endpoint node ids. The first and last bag
/// absorb the component's neighborhood and boundary; every leftover
/// component inside c attaches within a single bag.
struct PathStep {
    PartialDecomposition part;
    VertexId first_node;
    VertexId last_node;
};

std::variant<PathStep, MinorModel> path_decomposition_step(const Graph& g, VertexId w,
                                                           long long r, const Component& c,
                                                           int K);

/// Single extension step for the diamond-free case: small boundary diameter
/// gives a two-bag decomposition, otherwise the path decomposition is
/// wrapped with one extra node carrying the component neighborhood.
StepOutcome cactus_star_step(const Graph& g, VertexId w, long long r, const Component& c, int K);

/// Full pipeline: an honest (42K+1, 28K+3)-radial decomposition modelled on
/// a graph with every block an edge or a cycle, or a verified K-fat diamond
/// model.
std::variant<GraphDecomposition, MinorModel> decompose_cactus(const Graph& g, int K);

} // namespace cg
